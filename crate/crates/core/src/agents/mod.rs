//! In-process decision sources.

mod random;
mod simple;

use serde::{Deserialize, Serialize};

use crate::config::Mode;
use crate::observe::Observation;
use crate::types::Action;

pub use random::RandomAgent;
pub use simple::{SimpleAgent, ThreatMap};

/// What a behavior learns at the start of an episode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpisodeInfo {
    pub agent_id: usize,
    pub mode: Mode,
    /// Seed for the behavior's own random stream.
    pub seed: u64,
    pub bomb_life: u8,
    pub flame_life: u8,
}

impl EpisodeInfo {
    pub fn new(agent_id: usize, mode: Mode, seed: u64) -> Self {
        EpisodeInfo { agent_id, mode, seed, bomb_life: 10, flame_life: 2 }
    }
}

/// A policy that sees only its observation. Each instance owns its random stream.
pub trait AgentBehavior: Send {
    fn name(&self) -> &'static str;

    /// Clears per-episode memory and reseeds the random stream.
    fn reset(&mut self, info: &EpisodeInfo);

    fn act(&mut self, obs: &Observation) -> Action;
}

pub const REGISTERED: [&str; 2] = ["random", "simple"];

/// Builds a registered behavior by name.
pub fn by_name(name: &str, seed: u64) -> Option<Box<dyn AgentBehavior>> {
    match name {
        "random" => Some(Box::new(RandomAgent::new(seed))),
        "simple" => Some(Box::new(SimpleAgent::new(seed))),
        _ => None,
    }
}
