use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Four mutually hostile agents, at most one winner.
    Ffa,
    /// Two teams of two, teammates on opposite corners.
    Team,
    /// Team play with the two-word radio channel.
    TeamRadio,
}

impl Mode {
    pub fn is_team(self) -> bool {
        !matches!(self, Mode::Ffa)
    }

    pub fn has_radio(self) -> bool {
        matches!(self, Mode::TeamRadio)
    }

    pub fn teammate(self, id: usize) -> Option<usize> {
        self.is_team().then_some((id + 2) % 4)
    }

    /// Enemy ids in ascending order, padded with `None` in team modes.
    pub fn enemies(self, id: usize) -> [Option<usize>; 3] {
        if self.is_team() {
            let mut e = [(id + 1) % 4, (id + 3) % 4];
            e.sort_unstable();
            [Some(e[0]), Some(e[1]), None]
        } else {
            let mut out = [None; 3];
            for (slot, other) in (0..4).filter(|&o| o != id).enumerate() {
                out[slot] = Some(other);
            }
            out
        }
    }

    pub fn same_side(self, a: usize, b: usize) -> bool {
        a == b || self.teammate(a) == Some(b)
    }
}

/// Every knob of a single game. Serialized verbatim into replay headers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub mode: Mode,
    pub board_size: usize,
    pub num_rigid: usize,
    pub num_wood: usize,
    pub max_steps: u32,
    pub bomb_life: u8,
    pub initial_ammo: u8,
    pub initial_blast: u8,
    pub flame_life: u8,
    pub fog_enabled: bool,
    pub view_radius: u8,
    pub message_words: u8,
    pub collapse_start: Option<u32>,
    pub collapse_every: Option<u32>,
    pub rng_seed: u64,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig {
            mode: Mode::Ffa,
            board_size: 11,
            num_rigid: 36,
            num_wood: 36,
            max_steps: 800,
            bomb_life: 10,
            initial_ammo: 1,
            initial_blast: 2,
            flame_life: 2,
            fog_enabled: false,
            view_radius: 2,
            message_words: 8,
            collapse_start: None,
            collapse_every: None,
            rng_seed: 0,
        }
    }
}

impl GameConfig {
    pub fn ffa() -> Self {
        GameConfig::default()
    }

    pub fn team() -> Self {
        GameConfig { mode: Mode::Team, ..GameConfig::default() }
    }

    pub fn team_radio() -> Self {
        GameConfig { mode: Mode::TeamRadio, ..GameConfig::default() }
    }

    /// Partially observable team play without communication.
    pub fn nips() -> Self {
        GameConfig { mode: Mode::Team, fog_enabled: true, ..GameConfig::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    /// Shrinks the board one ring at a time starting at `start`, then every `every` steps.
    pub fn with_collapse(mut self, start: u32, every: u32) -> Self {
        self.collapse_start = Some(start);
        self.collapse_every = Some(every);
        self
    }

    pub fn cells(&self) -> usize {
        self.board_size * self.board_size
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let n = self.board_size;
        if n < 5 || n % 2 == 0 || n > 63 {
            return Err(ConfigError::BoardSize(n));
        }
        if self.bomb_life < 2 {
            return Err(ConfigError::invalid("bomb_life", "must be at least 2"));
        }
        if self.initial_blast < 2 {
            return Err(ConfigError::invalid("initial_blast", "must be at least 2"));
        }
        if self.initial_ammo < 1 {
            return Err(ConfigError::invalid("initial_ammo", "must be at least 1"));
        }
        if self.flame_life < 1 {
            return Err(ConfigError::invalid("flame_life", "must be at least 1"));
        }
        if self.view_radius < 1 {
            return Err(ConfigError::invalid("view_radius", "must be at least 1"));
        }
        if self.message_words < 1 {
            return Err(ConfigError::invalid("message_words", "must be at least 1"));
        }
        if self.max_steps < 1 {
            return Err(ConfigError::invalid("max_steps", "must be at least 1"));
        }
        if self.num_rigid % 4 != 0 {
            return Err(ConfigError::invalid("num_rigid", "must be divisible by 4"));
        }
        if self.num_wood % 4 != 0 {
            return Err(ConfigError::invalid("num_wood", "must be divisible by 4"));
        }
        // Non-center cells split into orbits of four; three orbits are reserved corner pockets.
        let free_cells = n * n - 1 - 12;
        if self.num_rigid + self.num_wood > free_cells {
            return Err(ConfigError::TooManyWalls { requested: self.num_rigid + self.num_wood, available: free_cells });
        }
        match (self.collapse_start, self.collapse_every) {
            (None, None) => {}
            (Some(_), Some(every)) if every >= 1 => {}
            (Some(_), Some(_)) => return Err(ConfigError::invalid("collapse_every", "must be at least 1")),
            _ => return Err(ConfigError::invalid("collapse_start", "collapse_start and collapse_every must be set together")),
        }
        Ok(())
    }
}
