//! Seeded generation of fair start boards.
//!
//! The board is partitioned into orbits of the 90° rotation about the center
//! (four cells each; the center cell is never used). The three orbits holding
//! the corners and their orthogonal neighbours stay open so each agent starts in
//! a pocket. Rigid orbits are drawn first, then wood orbits, from one ChaCha8
//! stream seeded with `rng_seed`; a layout whose corners are disconnected is
//! discarded and the same stream keeps drawing, up to [`MAX_ATTEMPTS`] times.
//!
//! Half of the wood hides power-ups. Whole orbits are used where the count
//! allows; a remainder of two goes to one diametrically opposite pair, which
//! keeps the placement symmetric under the half turn.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::config::GameConfig;
use crate::engine::GameState;
use crate::error::GenError;
use crate::rng::game_rng;
use crate::types::{Item, Pos, PowerUp, Terrain};

pub const MAX_ATTEMPTS: u32 = 100;

/// Quarter turn about the board center.
pub fn rotate(pos: Pos, size: usize) -> Pos {
    Pos::new(pos.col, size as i32 - 1 - pos.row)
}

pub fn orbit(pos: Pos, size: usize) -> [Pos; 4] {
    let a = pos;
    let b = rotate(a, size);
    let c = rotate(b, size);
    let d = rotate(c, size);
    [a, b, c, d]
}

/// Corners plus their two orthogonal neighbours.
pub fn reserved_cells(size: usize) -> Vec<Pos> {
    let mut cells = Vec::with_capacity(12);
    for seed in [Pos::new(0, 0), Pos::new(0, 1), Pos::new(1, 0)] {
        cells.extend(orbit(seed, size));
    }
    cells.sort();
    cells
}

/// Orbits available for walls, each listed from its smallest cell, in ascending order.
pub fn placeable_orbits(size: usize) -> Vec<[Pos; 4]> {
    let center = Pos::new(size as i32 / 2, size as i32 / 2);
    let reserved = reserved_cells(size);
    let mut orbits = Vec::new();
    for idx in 0..size * size {
        let pos = Pos::from_index(idx, size);
        if pos == center || reserved.contains(&pos) {
            continue;
        }
        let members = orbit(pos, size);
        if members.iter().min() == Some(&pos) {
            orbits.push(members);
        }
    }
    orbits
}

/// True iff the four corners are mutually reachable through non-rigid cells.
pub fn is_accessible(grid: &[Item], size: usize) -> bool {
    let far = size as i32 - 1;
    let corners = [Pos::new(0, 0), Pos::new(far, 0), Pos::new(far, far), Pos::new(0, far)];
    let open = |p: Pos| grid[p.index(size)] != Item::Rigid;
    if !corners.iter().all(|&c| open(c)) {
        return false;
    }
    let mut seen = vec![false; size * size];
    let mut queue = VecDeque::from([corners[0]]);
    seen[corners[0].index(size)] = true;
    while let Some(cur) = queue.pop_front() {
        for dir in crate::types::Direction::ALL {
            let next = cur.step(dir);
            if next.in_bounds(size) && !seen[next.index(size)] && open(next) {
                seen[next.index(size)] = true;
                queue.push_back(next);
            }
        }
    }
    corners.iter().all(|c| seen[c.index(size)])
}

pub fn generate(config: &GameConfig) -> Result<GameState, GenError> {
    config.validate()?;
    let n = config.board_size;
    let mut rng = game_rng(config.rng_seed);
    let mut orbits = placeable_orbits(n);
    let rigid_orbits = config.num_rigid / 4;
    let wood_orbits = config.num_wood / 4;

    for _ in 0..MAX_ATTEMPTS {
        orbits.shuffle(&mut rng);
        let mut terrain = vec![Terrain::Passage; n * n];
        for cells in &orbits[..rigid_orbits] {
            cells.iter().for_each(|c| terrain[c.index(n)] = Terrain::Rigid);
        }
        let wood = &orbits[rigid_orbits..rigid_orbits + wood_orbits];
        for cells in wood {
            cells.iter().for_each(|c| terrain[c.index(n)] = Terrain::Wood);
        }
        let grid: Vec<Item> = terrain.iter().map(|t| t.item()).collect();
        if !is_accessible(&grid, n) {
            continue;
        }

        let mut state = GameState::empty(config.clone());
        state.terrain = terrain;

        let hidden = config.num_wood / 2;
        let mut wood: Vec<[Pos; 4]> = wood.to_vec();
        wood.shuffle(&mut rng);
        for cells in &wood[..hidden / 4] {
            let kind = PowerUp::ALL[rng.gen_range(0..PowerUp::ALL.len())];
            cells.iter().for_each(|c| {
                state.hidden_items.insert(*c, kind);
            });
        }
        if hidden % 4 == 2 {
            let cells = wood[hidden / 4];
            let kind = PowerUp::ALL[rng.gen_range(0..PowerUp::ALL.len())];
            // cells[0] and cells[2] are a half turn apart.
            state.hidden_items.insert(cells[0], kind);
            state.hidden_items.insert(cells[2], kind);
        }
        state.render();
        return Ok(state);
    }
    Err(GenError::Disconnected { attempts: MAX_ATTEMPTS })
}
