//! A deterministic Pommerman engine with baseline agents, replays and a
//! networked match runner.
//!
//! The crate is organised bottom-up:
//!
//! * [`engine`]: the state machine (`GameState::step`), blast chaining,
//!   movement resolution and state digests.
//! * [`boardgen`]: seeded, rotationally symmetric start boards.
//! * [`observe`]: per-agent observations, fog, the radio relay and the
//!   observation wire codec.
//! * [`agents`]: the random and rule-based baseline behaviors.
//! * [`protocol`]: the HTTP client that queries remote agents under a time
//!   budget, and a server that exposes any behavior over the same wire.
//! * [`runner`]: episodes, matches, the tie policy, replays and statistics.
//!
//! Runnable walkthroughs live in `examples/`.

pub mod agents;
pub mod boardgen;
pub mod config;
pub mod engine;
pub mod error;
pub mod observe;
pub mod protocol;
pub mod rng;
pub mod runner;
pub mod types;

pub use config::{GameConfig, Mode};
pub use engine::{GameState, MatchResult, ResultKind};
pub use error::{ConfigError, EngineError, GenError, WireError};
pub use observe::Observation;
pub use types::{Action, Direction, Item, Message, Move, Pos, PowerUp, Terrain};
