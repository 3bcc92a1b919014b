//! The transition function and its phases.
//!
//! One step runs these phases in a fixed order:
//!
//! 1. age flames; expired flames surface any power-up they were hiding
//! 2. slide kicked bombs one cell
//! 3. resolve agent movement and new kicks
//! 4. lay bombs
//! 5. tick bombs that existed before this step
//! 6. detonate expired bombs and bombs sitting in flame, with chaining
//! 7. apply blast effects and burn agents standing in flame
//! 8. pick up power-ups
//! 9. route radio messages
//! 10. collapse the outer ring when scheduled
//! 11. check for a result

use crate::config::Mode;
use crate::engine::blast::{compute_blast_set, BlastSet};
use crate::engine::movement::resolve_movement;
use crate::engine::state::{Bomb, Flame, GameState, MatchResult};
use crate::error::EngineError;
use crate::types::{Action, Move, Pos, PowerUp, Terrain, SILENCE};

impl GameState {
    /// Returns the successor state. Missing inputs and inputs for dead agents count as Stop.
    pub fn step(&self, inputs: &[Option<Action>]) -> Result<GameState, EngineError> {
        let mut next = self.clone();
        next.step_mut(inputs)?;
        Ok(next)
    }

    /// In-place variant of [`GameState::step`]. On error the state is left untouched.
    pub fn step_mut(&mut self, inputs: &[Option<Action>]) -> Result<(), EngineError> {
        if inputs.len() != 4 {
            return Err(EngineError::InputArity(inputs.len()));
        }
        if self.result.is_some() {
            return Err(EngineError::GameOver(self.step));
        }
        let radio = self.config.mode.has_radio();
        let max_word = self.config.message_words;
        let mut moves = [Move::Stop; 4];
        let mut messages = [None; 4];
        for (id, input) in inputs.iter().enumerate() {
            let Some(action) = input else { continue };
            if !self.agents[id].alive {
                continue;
            }
            moves[id] = action.mv;
            if radio {
                if let Some(words) = action.message.filter(|w| *w != SILENCE) {
                    if let Some(&word) = words.iter().find(|w| **w == 0 || **w > max_word) {
                        return Err(EngineError::MessageWord { agent: id, word, max: max_word });
                    }
                    messages[id] = Some(words);
                }
            }
        }

        self.age_flames();
        advance_kicked_bombs(self);

        let resolution = resolve_movement(self, &moves);
        for (agent, pos) in self.agents.iter_mut().zip(resolution.positions) {
            agent.position = pos;
        }
        for &(bomb, dir) in &resolution.kicks {
            self.bombs[bomb].velocity = Some(dir);
        }

        let ticking = self.bombs.len();
        self.lay_bombs(&moves);
        for bomb in &mut self.bombs[..ticking] {
            bomb.life = bomb.life.saturating_sub(1);
        }

        let detonating: Vec<usize> = self
            .bombs
            .iter()
            .enumerate()
            .filter(|(_, b)| b.life == 0 || self.flames.iter().any(|f| f.position == b.position))
            .map(|(i, _)| i)
            .collect();
        let blast = if detonating.is_empty() { BlastSet::default() } else { compute_blast_set(self, &detonating) };
        apply_blast(self, &blast);

        self.pick_up_power_ups();

        for agent in &mut self.agents {
            agent.outbox = if agent.alive { messages[agent.id] } else { None };
        }

        self.step += 1;
        apply_collapse(self);
        self.result = check_done(self);
        self.render();
        Ok(())
    }

    fn age_flames(&mut self) {
        let n = self.size();
        let terrain = &mut self.terrain;
        self.flames.retain_mut(|flame| {
            flame.life -= 1;
            if flame.life > 0 {
                return true;
            }
            if let Some(item) = flame.reveal {
                terrain[flame.position.index(n)] = Terrain::PowerUp(item);
            }
            false
        });
    }

    fn lay_bombs(&mut self, moves: &[Move; 4]) {
        for id in 0..4 {
            let agent = &self.agents[id];
            if moves[id] != Move::Bomb || !agent.alive || agent.ammo == 0 {
                continue;
            }
            let pos = agent.position;
            if self.bombs.iter().any(|b| b.position == pos) {
                continue;
            }
            let (life, strength) = (self.config.bomb_life, agent.blast_strength);
            self.agents[id].ammo -= 1;
            self.bombs.push(Bomb {
                position: pos,
                owner: id,
                life,
                blast_strength: strength,
                velocity: None,
            });
        }
    }

    fn pick_up_power_ups(&mut self) {
        let n = self.size();
        for agent in self.agents.iter_mut().filter(|a| a.alive) {
            let idx = agent.position.index(n);
            let Terrain::PowerUp(item) = self.terrain[idx] else { continue };
            match item {
                PowerUp::ExtraBomb => {
                    agent.ammo += 1;
                    agent.max_ammo += 1;
                }
                PowerUp::IncreaseRange => agent.blast_strength = agent.blast_strength.saturating_add(1),
                PowerUp::CanKick => agent.can_kick = true,
            }
            self.terrain[idx] = Terrain::Passage;
        }
    }

    fn refund(&mut self, bomb: usize) {
        let owner = self.bombs.remove(bomb).owner;
        self.agents[owner].ammo += 1;
    }

    fn kill(&mut self, id: usize) {
        self.agents[id].alive = false;
        self.agents[id].outbox = None;
    }
}

/// Moves every sliding bomb one cell, or stops it when the way is blocked.
///
/// A bomb halts when its next cell is off the board, a wall, a power-up, another
/// bomb, or an agent, or when two sliding bombs would enter the same cell.
/// Sliding into a flame is allowed; the bomb then detonates in the same step.
pub fn advance_kicked_bombs(state: &mut GameState) {
    let n = state.size();
    let targets: Vec<Option<Pos>> = state
        .bombs
        .iter()
        .map(|bomb| {
            let dir = bomb.velocity?;
            let next = bomb.position.step(dir);
            let open = next.in_bounds(n)
                && state.terrain_at(next) == Terrain::Passage
                && !state.bombs.iter().any(|b| b.position == next)
                && state.agent_at(next).is_none();
            Some(if open { next } else { bomb.position })
        })
        .collect();

    let moving = |t: &Option<Pos>, b: &Bomb| matches!(t, Some(p) if *p != b.position);
    let outcome: Vec<Option<bool>> = (0..state.bombs.len())
        .map(|i| {
            let target = targets[i]?;
            let bomb = &state.bombs[i];
            let contested = targets
                .iter()
                .zip(&state.bombs)
                .enumerate()
                .any(|(j, (t, b))| j != i && moving(t, b) && *t == Some(target));
            Some(moving(&targets[i], bomb) && !contested)
        })
        .collect();
    for ((bomb, target), advance) in state.bombs.iter_mut().zip(targets).zip(outcome) {
        match advance {
            Some(true) => bomb.position = target.expect("moving bomb has a target"),
            Some(false) => bomb.velocity = None,
            None => {}
        }
    }
}

/// Applies one explosion event, then burns every agent standing in any flame.
///
/// Wood in the blast becomes passage and hands its hidden power-up to the new
/// flame; visible power-ups are destroyed; consumed bombs refund their owners.
pub fn apply_blast(state: &mut GameState, blast: &BlastSet) {
    let n = state.size();
    let flame_life = state.config.flame_life;
    for &pos in &blast.cells {
        let idx = pos.index(n);
        let reveal = match state.terrain[idx] {
            Terrain::Wood => {
                state.terrain[idx] = Terrain::Passage;
                state.hidden_items.remove(&pos)
            }
            Terrain::PowerUp(_) => {
                state.terrain[idx] = Terrain::Passage;
                None
            }
            Terrain::Passage | Terrain::Rigid => None,
        };
        match state.flames.iter_mut().find(|f| f.position == pos) {
            Some(flame) => {
                flame.life = flame_life;
                if reveal.is_some() {
                    flame.reveal = reveal;
                }
            }
            None => state.flames.push(Flame { position: pos, life: flame_life, reveal }),
        }
    }
    for &bomb in blast.bombs.iter().rev() {
        state.refund(bomb);
    }
    for id in 0..4 {
        let agent = &state.agents[id];
        if agent.alive && state.flames.iter().any(|f| f.position == agent.position) {
            state.kill(id);
        }
    }
}

/// Distance of a cell from the board edge; ring 0 is the outermost.
pub fn ring_of(pos: Pos, size: usize) -> u32 {
    let far = size as i32 - 1;
    pos.row.min(pos.col).min(far - pos.row).min(far - pos.col) as u32
}

/// Turns the next ring into rigid wall when the schedule says so, destroying everything on it.
pub fn apply_collapse(state: &mut GameState) {
    let (Some(start), Some(every)) = (state.config.collapse_start, state.config.collapse_every) else {
        return;
    };
    if state.step < start || (state.step - start) % every != 0 {
        return;
    }
    let n = state.size();
    let ring = state.collapse_ring;
    // The center cell never collapses.
    if ring as usize >= n / 2 {
        return;
    }
    for idx in 0..n * n {
        let pos = Pos::from_index(idx, n);
        if ring_of(pos, n) == ring {
            state.terrain[idx] = Terrain::Rigid;
            state.hidden_items.remove(&pos);
        }
    }
    state.flames.retain(|f| ring_of(f.position, n) != ring);
    while let Some(i) = state.bombs.iter().position(|b| ring_of(b.position, n) == ring) {
        state.refund(i);
    }
    for id in 0..4 {
        if state.agents[id].alive && ring_of(state.agents[id].position, n) == ring {
            state.kill(id);
        }
    }
    state.collapse_ring += 1;
}

/// Terminal check on an already-advanced state.
pub fn check_done(state: &GameState) -> Option<MatchResult> {
    let alive: Vec<usize> = state.alive_ids().collect();
    match state.config.mode {
        Mode::Ffa => match alive.len() {
            0 => return Some(MatchResult::tie()),
            1 => return Some(MatchResult::win(alive)),
            _ => {}
        },
        Mode::Team | Mode::TeamRadio => {
            let team_alive = |t: usize| alive.iter().any(|&id| id % 2 == t);
            match (team_alive(0), team_alive(1)) {
                (false, false) => return Some(MatchResult::tie()),
                (true, false) => return Some(MatchResult::win(vec![0, 2])),
                (false, true) => return Some(MatchResult::win(vec![1, 3])),
                (true, true) => {}
            }
        }
    }
    (state.step >= state.config.max_steps).then(MatchResult::tie)
}
