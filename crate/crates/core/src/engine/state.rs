use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::GameConfig;
use crate::types::{Direction, Item, Message, Pos, PowerUp, Terrain};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentState {
    pub id: usize,
    pub alive: bool,
    pub position: Pos,
    pub ammo: u8,
    pub max_ammo: u8,
    pub blast_strength: u8,
    pub can_kick: bool,
    /// Message emitted on the last step, delivered to the teammate on the next observation.
    pub outbox: Option<Message>,
}

impl AgentState {
    pub fn new(id: usize, position: Pos, config: &GameConfig) -> Self {
        AgentState {
            id,
            alive: true,
            position,
            ammo: config.initial_ammo,
            max_ammo: config.initial_ammo,
            blast_strength: config.initial_blast,
            can_kick: false,
            outbox: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bomb {
    pub position: Pos,
    pub owner: usize,
    pub life: u8,
    pub blast_strength: u8,
    pub velocity: Option<Direction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flame {
    pub position: Pos,
    pub life: u8,
    /// Power-up uncovered by the blast that made this flame; it surfaces once the flame expires.
    pub reveal: Option<PowerUp>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResultKind {
    Win,
    Tie,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchResult {
    pub kind: ResultKind,
    /// Ascending agent ids; empty for a tie.
    pub winners: Vec<usize>,
}

impl MatchResult {
    pub fn tie() -> Self {
        MatchResult { kind: ResultKind::Tie, winners: Vec::new() }
    }

    pub fn win(mut winners: Vec<usize>) -> Self {
        winners.sort_unstable();
        MatchResult { kind: ResultKind::Win, winners }
    }

    pub fn is_tie(&self) -> bool {
        self.kind == ResultKind::Tie
    }
}

/// The authoritative world snapshot.
///
/// `grid` is the rendered board (what observers see before fog); `terrain` is
/// the static layer beneath it. Both are kept in sync by [`GameState::render`],
/// which the transition function calls at the end of every step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameState {
    pub config: GameConfig,
    pub step: u32,
    pub grid: Vec<Item>,
    pub terrain: Vec<Terrain>,
    pub agents: [AgentState; 4],
    pub bombs: Vec<Bomb>,
    pub flames: Vec<Flame>,
    /// Power-ups buried under wood, keyed by the wood cell.
    pub hidden_items: BTreeMap<Pos, PowerUp>,
    pub collapse_ring: u32,
    pub result: Option<MatchResult>,
}

/// Start corners, counter-clockwise from the top-left so teammates (id, id+2) sit diagonally.
pub fn start_position(id: usize, size: usize) -> Pos {
    let far = size as i32 - 1;
    match id {
        0 => Pos::new(0, 0),
        1 => Pos::new(far, 0),
        2 => Pos::new(far, far),
        3 => Pos::new(0, far),
        _ => panic!("agent id {id} out of range"),
    }
}

impl GameState {
    /// An all-passage board with the four agents on their corners. Board
    /// generation and tests build on top of this.
    pub fn empty(config: GameConfig) -> Self {
        let n = config.board_size;
        let agents = std::array::from_fn(|id| AgentState::new(id, start_position(id, n), &config));
        let mut state = GameState {
            step: 0,
            grid: vec![Item::Passage; n * n],
            terrain: vec![Terrain::Passage; n * n],
            agents,
            bombs: Vec::new(),
            flames: Vec::new(),
            hidden_items: BTreeMap::new(),
            collapse_ring: 0,
            result: None,
            config,
        };
        state.render();
        state
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.config.board_size
    }

    #[inline]
    pub fn terrain_at(&self, pos: Pos) -> Terrain {
        self.terrain[pos.index(self.size())]
    }

    pub fn set_terrain(&mut self, pos: Pos, terrain: Terrain) {
        let n = self.size();
        self.terrain[pos.index(n)] = terrain;
    }

    #[inline]
    pub fn item_at(&self, pos: Pos) -> Item {
        self.grid[pos.index(self.size())]
    }

    pub fn bomb_at(&self, pos: Pos) -> Option<usize> {
        self.bombs.iter().position(|b| b.position == pos)
    }

    pub fn flame_at(&self, pos: Pos) -> Option<usize> {
        self.flames.iter().position(|f| f.position == pos)
    }

    pub fn agent_at(&self, pos: Pos) -> Option<usize> {
        self.agents.iter().position(|a| a.alive && a.position == pos)
    }

    pub fn alive_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.agents.iter().filter(|a| a.alive).map(|a| a.id)
    }

    pub fn is_done(&self) -> bool {
        self.result.is_some()
    }

    /// Places a bomb owned by `owner`, charging the owner's ammo so conservation holds.
    pub fn add_bomb(&mut self, owner: usize, position: Pos, life: u8, blast_strength: u8) {
        let agent = &mut self.agents[owner];
        if agent.ammo > 0 {
            agent.ammo -= 1;
        } else {
            agent.max_ammo += 1;
        }
        self.bombs.push(Bomb { position, owner, life, blast_strength, velocity: None });
    }

    /// Redraws `grid` from terrain and entities. Priority: agent > flame > bomb > power-up > terrain.
    pub fn render(&mut self) {
        let n = self.size();
        for (cell, terrain) in self.grid.iter_mut().zip(&self.terrain) {
            *cell = terrain.item();
        }
        for bomb in &self.bombs {
            self.grid[bomb.position.index(n)] = Item::Bomb;
        }
        for flame in &self.flames {
            self.grid[flame.position.index(n)] = Item::Flame;
        }
        for agent in self.agents.iter().filter(|a| a.alive) {
            self.grid[agent.position.index(n)] = Item::agent(agent.id);
        }
    }

    /// Checks every structural invariant, returning a description of the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.size();
        for agent in &self.agents {
            let live = self.bombs.iter().filter(|b| b.owner == agent.id).count();
            if agent.ammo as usize + live != agent.max_ammo as usize {
                return Err(format!(
                    "agent {} ammo {} + live bombs {} != max_ammo {}",
                    agent.id, agent.ammo, live, agent.max_ammo
                ));
            }
            if agent.alive {
                if !agent.position.in_bounds(n) {
                    return Err(format!("agent {} off board at {}", agent.id, agent.position));
                }
                if self.item_at(agent.position) != Item::agent(agent.id) {
                    return Err(format!("agent {} not rendered at {}", agent.id, agent.position));
                }
                if self.terrain_at(agent.position).is_wall() {
                    return Err(format!("agent {} inside a wall at {}", agent.id, agent.position));
                }
            } else if agent.outbox.is_some() {
                return Err(format!("dead agent {} holds a message", agent.id));
            }
        }
        for (i, a) in self.agents.iter().enumerate() {
            for b in &self.agents[i + 1..] {
                if a.alive && b.alive && a.position == b.position {
                    return Err(format!("agents {} and {} share {}", a.id, b.id, a.position));
                }
            }
        }
        for (i, bomb) in self.bombs.iter().enumerate() {
            if !bomb.position.in_bounds(n) || self.terrain_at(bomb.position).is_wall() {
                return Err(format!("bomb at invalid cell {}", bomb.position));
            }
            if self.bombs[i + 1..].iter().any(|o| o.position == bomb.position) {
                return Err(format!("two bombs at {}", bomb.position));
            }
        }
        for (i, flame) in self.flames.iter().enumerate() {
            if self.flames[i + 1..].iter().any(|o| o.position == flame.position) {
                return Err(format!("two flames at {}", flame.position));
            }
            if flame.life == 0 || flame.life > self.config.flame_life {
                return Err(format!("flame at {} has life {}", flame.position, flame.life));
            }
        }
        for pos in self.hidden_items.keys() {
            if self.terrain_at(*pos) != Terrain::Wood {
                return Err(format!("hidden item at {pos} is not under wood"));
            }
        }
        for (idx, cell) in self.grid.iter().enumerate() {
            if *cell == Item::Fog {
                return Err(format!("fog rendered in authoritative grid at {}", Pos::from_index(idx, n)));
            }
            let terrain = self.terrain[idx];
            if matches!(terrain, Terrain::Rigid | Terrain::Wood) && *cell != terrain.item() {
                return Err(format!("wall at {} rendered as {:?}", Pos::from_index(idx, n), cell));
            }
        }
        let mut rendered = self.clone();
        rendered.render();
        if rendered.grid != self.grid {
            return Err("grid out of sync with entities".into());
        }
        Ok(())
    }
}
