//! Explosion geometry and chaining.

use crate::engine::state::GameState;
use crate::types::{Direction, Pos, Terrain};

/// Cells covered by one explosion event and every bomb it consumed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlastSet {
    /// Row-major order, no duplicates.
    pub cells: Vec<Pos>,
    /// Indices into `GameState::bombs`, ascending.
    pub bombs: Vec<usize>,
}

impl BlastSet {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty() && self.bombs.is_empty()
    }

    pub fn covers(&self, pos: Pos) -> bool {
        self.cells.binary_search(&pos).is_ok()
    }
}

/// Casts the cross-shaped rays of a single bomb, calling `visit` for every covered cell.
///
/// Strength `s` reaches the bomb cell plus `s - 1` cells each way. A ray stops
/// before a rigid cell or the board edge, and stops on (covering) the first
/// wood or power-up cell.
pub fn cast_rays(terrain: &[Terrain], size: usize, origin: Pos, strength: u8, mut visit: impl FnMut(Pos)) {
    visit(origin);
    for dir in Direction::ALL {
        let mut cell = origin;
        for _ in 1..strength {
            cell = cell.step(dir);
            if !cell.in_bounds(size) {
                break;
            }
            match terrain[cell.index(size)] {
                Terrain::Rigid => break,
                Terrain::Wood | Terrain::PowerUp(_) => {
                    visit(cell);
                    break;
                }
                Terrain::Passage => visit(cell),
            }
        }
    }
}

/// Closes `detonating` under chaining: any bomb lying in a covered cell detonates too.
pub fn compute_blast_set(state: &GameState, detonating: &[usize]) -> BlastSet {
    let n = state.size();
    let mut covered = vec![false; n * n];
    let mut bomb_at: Vec<Option<usize>> = vec![None; n * n];
    for (i, bomb) in state.bombs.iter().enumerate() {
        bomb_at[bomb.position.index(n)] = Some(i);
    }

    let mut exploded = vec![false; state.bombs.len()];
    let mut queue: Vec<usize> = Vec::with_capacity(state.bombs.len());
    for &i in detonating {
        if !exploded[i] {
            exploded[i] = true;
            queue.push(i);
        }
    }

    while let Some(i) = queue.pop() {
        let bomb = &state.bombs[i];
        cast_rays(&state.terrain, n, bomb.position, bomb.blast_strength, |cell| {
            let idx = cell.index(n);
            covered[idx] = true;
            if let Some(j) = bomb_at[idx] {
                if !exploded[j] {
                    exploded[j] = true;
                    queue.push(j);
                }
            }
        });
    }

    BlastSet {
        cells: covered
            .iter()
            .enumerate()
            .filter(|(_, c)| **c)
            .map(|(idx, _)| Pos::from_index(idx, n))
            .collect(),
        bombs: exploded.iter().enumerate().filter(|(_, e)| **e).map(|(i, _)| i).collect(),
    }
}
