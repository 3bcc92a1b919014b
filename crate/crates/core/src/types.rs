//! Small value types shared by every layer: positions, moves, actions and
//! the integer cell legend used on the board and on the wire.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A board cell, addressed as (row, col) with (0, 0) in the top-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub row: i32,
    pub col: i32,
}

impl Pos {
    pub const fn new(row: i32, col: i32) -> Self {
        Pos { row, col }
    }

    pub fn step(self, dir: Direction) -> Pos {
        let (dr, dc) = dir.delta();
        Pos::new(self.row + dr, self.col + dc)
    }

    pub fn in_bounds(self, size: usize) -> bool {
        let n = size as i32;
        self.row >= 0 && self.col >= 0 && self.row < n && self.col < n
    }

    /// Row-major index. Caller guarantees the position is on the board.
    #[inline]
    pub fn index(self, size: usize) -> usize {
        self.row as usize * size + self.col as usize
    }

    pub fn from_index(index: usize, size: usize) -> Pos {
        Pos::new((index / size) as i32, (index % size) as i32)
    }

    pub fn chebyshev(self, other: Pos) -> i32 {
        (self.row - other.row).abs().max((self.col - other.col).abs())
    }

    pub fn manhattan(self, other: Pos) -> i32 {
        (self.row - other.row).abs() + (self.col - other.col).abs()
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Left,
    Down,
    Right,
}

impl Direction {
    /// Fixed tie-break order used by every search in the crate.
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Left, Direction::Down, Direction::Right];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::Up => (-1, 0),
            Direction::Left => (0, -1),
            Direction::Down => (1, 0),
            Direction::Right => (0, 1),
        }
    }

    pub fn to_move(self) -> Move {
        match self {
            Direction::Up => Move::Up,
            Direction::Left => Move::Left,
            Direction::Down => Move::Down,
            Direction::Right => Move::Right,
        }
    }

    /// 1..=4, the same numbering as the matching [`Move`].
    pub fn code(self) -> u8 {
        self.to_move() as u8
    }

    pub fn from_code(code: u8) -> Option<Direction> {
        Move::from_code(code).and_then(Move::direction)
    }
}

/// The six discrete actions, numbered as on the wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(u8)]
pub enum Move {
    #[default]
    Stop = 0,
    Up = 1,
    Left = 2,
    Down = 3,
    Right = 4,
    Bomb = 5,
}

impl Move {
    pub const ALL: [Move; 6] = [Move::Stop, Move::Up, Move::Left, Move::Down, Move::Right, Move::Bomb];

    pub fn from_code(code: u8) -> Option<Move> {
        Move::ALL.get(code as usize).copied()
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn direction(self) -> Option<Direction> {
        match self {
            Move::Up => Some(Direction::Up),
            Move::Left => Some(Direction::Left),
            Move::Down => Some(Direction::Down),
            Move::Right => Some(Direction::Right),
            Move::Stop | Move::Bomb => None,
        }
    }
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.code())
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let code = u8::deserialize(d)?;
        Move::from_code(code).ok_or_else(|| serde::de::Error::custom(format!("move {code} not in [0, 5]")))
    }
}

/// A two-word radio message. Words are 1-based; 0 is reserved for "nothing received".
pub type Message = [u8; 2];

/// The silent message seen when the teammate is dead, on the first step, or timed out.
pub const SILENCE: Message = [0, 0];

/// One agent's submission for a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Action {
    #[serde(rename = "action")]
    pub mv: Move,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<Message>,
}

impl Action {
    pub const STOP: Action = Action { mv: Move::Stop, message: None };

    pub fn new(mv: Move) -> Self {
        Action { mv, message: None }
    }

    pub fn with_message(mv: Move, message: Message) -> Self {
        Action { mv, message: Some(message) }
    }
}

impl From<Move> for Action {
    fn from(mv: Move) -> Self {
        Action::new(mv)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PowerUp {
    ExtraBomb,
    IncreaseRange,
    CanKick,
}

impl PowerUp {
    pub const ALL: [PowerUp; 3] = [PowerUp::ExtraBomb, PowerUp::IncreaseRange, PowerUp::CanKick];

    pub fn item(self) -> Item {
        match self {
            PowerUp::ExtraBomb => Item::ExtraBomb,
            PowerUp::IncreaseRange => Item::IncreaseRange,
            PowerUp::CanKick => Item::CanKick,
        }
    }
}

/// Static layer of a cell, independent of agents, bombs and flames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Terrain {
    Passage,
    Rigid,
    Wood,
    PowerUp(PowerUp),
}

impl Terrain {
    pub fn is_wall(self) -> bool {
        matches!(self, Terrain::Rigid | Terrain::Wood)
    }

    pub fn item(self) -> Item {
        match self {
            Terrain::Passage => Item::Passage,
            Terrain::Rigid => Item::Rigid,
            Terrain::Wood => Item::Wood,
            Terrain::PowerUp(p) => p.item(),
        }
    }
}

/// Cell codes rendered on the board. Fog is 5; agents are 10 + id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Item {
    Passage = 0,
    Rigid = 1,
    Wood = 2,
    Bomb = 3,
    Flame = 4,
    Fog = 5,
    ExtraBomb = 6,
    IncreaseRange = 7,
    CanKick = 8,
    Agent0 = 10,
    Agent1 = 11,
    Agent2 = 12,
    Agent3 = 13,
}

impl Item {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Item> {
        Some(match code {
            0 => Item::Passage,
            1 => Item::Rigid,
            2 => Item::Wood,
            3 => Item::Bomb,
            4 => Item::Flame,
            5 => Item::Fog,
            6 => Item::ExtraBomb,
            7 => Item::IncreaseRange,
            8 => Item::CanKick,
            10 => Item::Agent0,
            11 => Item::Agent1,
            12 => Item::Agent2,
            13 => Item::Agent3,
            _ => return None,
        })
    }

    pub fn agent(id: usize) -> Item {
        match id {
            0 => Item::Agent0,
            1 => Item::Agent1,
            2 => Item::Agent2,
            3 => Item::Agent3,
            _ => panic!("agent id {id} out of range"),
        }
    }

    pub fn agent_id(self) -> Option<usize> {
        let code = self.code();
        (10..=13).contains(&code).then(|| (code - 10) as usize)
    }

    pub fn is_power_up(self) -> bool {
        matches!(self, Item::ExtraBomb | Item::IncreaseRange | Item::CanKick)
    }
}

impl Serialize for Item {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.code())
    }
}

impl<'de> Deserialize<'de> for Item {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let code = u8::deserialize(d)?;
        Item::from_code(code).ok_or_else(|| serde::de::Error::custom(format!("unknown cell code {code}")))
    }
}
