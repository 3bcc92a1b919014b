//! The game state machine.

mod blast;
mod digest;
mod movement;
mod state;
mod step;

pub use blast::{cast_rays, compute_blast_set, BlastSet};
pub use digest::{digest_hex, state_digest};
pub use movement::{resolve_movement, MoveResolution};
pub use state::{start_position, AgentState, Bomb, Flame, GameState, MatchResult, ResultKind};
pub use step::{advance_kicked_bombs, apply_blast, apply_collapse, check_done, ring_of};
