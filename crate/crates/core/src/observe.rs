//! Per-agent observations, radio relay, and the observation wire codec.
//!
//! The wire form is a UTF-8 JSON object with exactly these keys (see
//! `docs/WIRE.md` for the normative description):
//!
//! | key                   | type            | range                                   |
//! |-----------------------|-----------------|-----------------------------------------|
//! | `board`               | int[size²]      | cell legend, row-major                  |
//! | `bomb_blast_strength` | int[size²]      | ≥ 0, 0 where no visible bomb            |
//! | `bomb_life`           | int[size²]      | ≥ 0, 0 where no visible bomb            |
//! | `position`            | int[2]          | (row, col), each in [0, size)           |
//! | `ammo`                | int             | ≥ 0                                     |
//! | `blast_strength`      | int             | ≥ 1                                     |
//! | `can_kick`            | int             | 0 or 1                                  |
//! | `teammate`            | int             | [-1, 3]                                 |
//! | `enemies`             | int[3]          | each in [-1, 3]                         |
//! | `message`             | int[2] or null  | each in [0, 8]; present only with radio |
//! | `step`                | int             | ≥ 0                                     |

use serde::{Deserialize, Serialize};

use crate::config::GameConfig;
use crate::engine::GameState;
use crate::error::WireError;
use crate::types::{Item, Message, Pos, SILENCE};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub board: Vec<u8>,
    pub bomb_blast_strength: Vec<u8>,
    pub bomb_life: Vec<u8>,
    pub position: [u8; 2],
    pub ammo: u8,
    pub blast_strength: u8,
    pub can_kick: u8,
    pub teammate: i8,
    pub enemies: [i8; 3],
    #[serde(default)]
    pub message: Option<Message>,
    pub step: u32,
}

impl Observation {
    pub fn board_size(&self) -> usize {
        (self.board.len() as f64).sqrt() as usize
    }

    pub fn pos(&self) -> Pos {
        Pos::new(self.position[0] as i32, self.position[1] as i32)
    }

    pub fn item(&self, pos: Pos) -> Item {
        Item::from_code(self.board[pos.index(self.board_size())]).unwrap_or(Item::Fog)
    }

    pub fn enemy_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.enemies.iter().filter(|e| **e >= 0).map(|e| *e as usize)
    }

    pub fn has_radio(&self) -> bool {
        self.message.is_some()
    }
}

/// What `agent_id`'s teammate said on the previous step, or silence.
pub fn inbox(state: &GameState, agent_id: usize) -> Message {
    let Some(mate) = state.config.mode.teammate(agent_id) else { return SILENCE };
    let mate = &state.agents[mate];
    if mate.alive {
        mate.outbox.unwrap_or(SILENCE)
    } else {
        SILENCE
    }
}

/// Inboxes for all four seats.
pub fn route_messages(state: &GameState) -> [Message; 4] {
    std::array::from_fn(|id| inbox(state, id))
}

pub fn observe(state: &GameState, agent_id: usize, config: &GameConfig) -> Observation {
    let n = state.size();
    let me = &state.agents[agent_id];
    let radius = config.view_radius as i32;
    let visible = |pos: Pos| !config.fog_enabled || pos.chebyshev(me.position) <= radius;

    let mut board: Vec<u8> = state.grid.iter().map(|c| c.code()).collect();
    let mut bomb_blast_strength = vec![0u8; n * n];
    let mut bomb_life = vec![0u8; n * n];
    for bomb in &state.bombs {
        if visible(bomb.position) {
            let idx = bomb.position.index(n);
            bomb_blast_strength[idx] = bomb.blast_strength;
            bomb_life[idx] = bomb.life;
        }
    }
    if config.fog_enabled {
        for (idx, cell) in board.iter_mut().enumerate() {
            if !visible(Pos::from_index(idx, n)) {
                *cell = Item::Fog.code();
            }
        }
    }

    let mode = config.mode;
    let slot = |id: Option<usize>| id.map_or(-1, |i| i as i8);
    let [e0, e1, e2] = mode.enemies(agent_id);
    Observation {
        board,
        bomb_blast_strength,
        bomb_life,
        position: [me.position.row as u8, me.position.col as u8],
        ammo: me.ammo,
        blast_strength: me.blast_strength,
        can_kick: me.can_kick as u8,
        teammate: slot(mode.teammate(agent_id)),
        enemies: [slot(e0), slot(e1), slot(e2)],
        message: mode.has_radio().then(|| inbox(state, agent_id)),
        step: state.step,
    }
}

/// Observations for all four seats, using the state's own config.
pub fn observe_all(state: &GameState) -> [Observation; 4] {
    std::array::from_fn(|id| observe(state, id, &state.config))
}

/// One character per cell: `.` passage, `#` rigid, `+` wood, `o` bomb,
/// `*` flame, `?` fog, `b`/`r`/`k` power-ups, `0`-`3` agents.
pub fn board_ascii(board: &[u8]) -> String {
    let n = (board.len() as f64).sqrt() as usize;
    let mut out = String::with_capacity(board.len() + n);
    for row in board.chunks(n) {
        for &code in row {
            out.push(match Item::from_code(code) {
                Some(Item::Passage) => '.',
                Some(Item::Rigid) => '#',
                Some(Item::Wood) => '+',
                Some(Item::Bomb) => 'o',
                Some(Item::Flame) => '*',
                Some(Item::Fog) => '?',
                Some(Item::ExtraBomb) => 'b',
                Some(Item::IncreaseRange) => 'r',
                Some(Item::CanKick) => 'k',
                Some(agent) => char::from(b'0' + (agent.code() - 10)),
                None => '!',
            });
        }
        out.push('\n');
    }
    out
}

pub fn encode_observation(obs: &Observation) -> String {
    serde_json::to_string(obs).expect("observation serializes")
}

/// Raw shape accepted off the wire before range checks.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObservation {
    board: Vec<i64>,
    bomb_blast_strength: Vec<i64>,
    bomb_life: Vec<i64>,
    position: Vec<i64>,
    ammo: i64,
    blast_strength: i64,
    can_kick: i64,
    teammate: i64,
    enemies: Vec<i64>,
    #[serde(default)]
    message: Option<Vec<i64>>,
    step: i64,
}

fn ranged(field: &'static str, v: i64, lo: i64, hi: i64) -> Result<i64, WireError> {
    if v < lo || v > hi {
        Err(WireError::field(field, format!("value {v} outside [{lo}, {hi}]")))
    } else {
        Ok(v)
    }
}

fn ranged_vec(field: &'static str, v: &[i64], len: usize, lo: i64, hi: i64) -> Result<Vec<u8>, WireError> {
    if v.len() != len {
        return Err(WireError::field(field, format!("expected {len} values, got {}", v.len())));
    }
    v.iter().map(|&x| ranged(field, x, lo, hi).map(|x| x as u8)).collect()
}

pub fn decode_observation(body: &[u8]) -> Result<Observation, WireError> {
    let raw: RawObservation = serde_json::from_slice(body).map_err(|e| {
        let msg = e.to_string();
        // serde names the missing/unknown key in its message; surface it as the field.
        for key in [
            "board",
            "bomb_blast_strength",
            "bomb_life",
            "position",
            "ammo",
            "blast_strength",
            "can_kick",
            "teammate",
            "enemies",
            "message",
            "step",
        ] {
            if msg.contains(&format!("`{key}`")) {
                return WireError::field(key, msg);
            }
        }
        WireError::Syntax(msg)
    })?;

    let cells = raw.board.len();
    let size = (cells as f64).sqrt() as usize;
    if size * size != cells || size < 5 || size % 2 == 0 {
        return Err(WireError::field("board", format!("length {cells} is not the square of an odd size >= 5")));
    }
    let board = raw
        .board
        .iter()
        .map(|&c| match u8::try_from(c).ok().and_then(Item::from_code) {
            Some(item) => Ok(item.code()),
            None => Err(WireError::field("board", format!("{c} is not a cell code"))),
        })
        .collect::<Result<Vec<u8>, _>>()?;
    let bomb_blast_strength = ranged_vec("bomb_blast_strength", &raw.bomb_blast_strength, cells, 0, 255)?;
    let bomb_life = ranged_vec("bomb_life", &raw.bomb_life, cells, 0, 255)?;
    if bomb_blast_strength.iter().zip(&bomb_life).any(|(s, l)| (*s > 0) != (*l > 0)) {
        return Err(WireError::field("bomb_life", "bomb maps disagree on which cells hold bombs"));
    }
    let position = ranged_vec("position", &raw.position, 2, 0, size as i64 - 1)?;
    let enemies = ranged_vec("enemies", &raw.enemies.iter().map(|e| e + 1).collect::<Vec<_>>(), 3, 0, 4)
        .map_err(|e| match e {
            WireError::Field { reason, .. } if reason.starts_with("expected") => WireError::field("enemies", reason),
            _ => WireError::field("enemies", "values must be in [-1, 3]"),
        })?;
    let message = match raw.message {
        None => None,
        Some(words) => {
            let w = ranged_vec("message", &words, 2, 0, 8)?;
            Some([w[0], w[1]])
        }
    };
    Ok(Observation {
        board,
        bomb_blast_strength,
        bomb_life,
        position: [position[0], position[1]],
        ammo: ranged("ammo", raw.ammo, 0, 255)? as u8,
        blast_strength: ranged("blast_strength", raw.blast_strength, 1, 255)? as u8,
        can_kick: ranged("can_kick", raw.can_kick, 0, 1)? as u8,
        teammate: ranged("teammate", raw.teammate, -1, 3)? as i8,
        enemies: [enemies[0] as i8 - 1, enemies[1] as i8 - 1, enemies[2] as i8 - 1],
        message,
        step: ranged("step", raw.step, 0, u32::MAX as i64)? as u32,
    })
}
