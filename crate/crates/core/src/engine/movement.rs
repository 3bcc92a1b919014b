//! Simultaneous movement resolution.
//!
//! Every alive agent proposes a target cell. A proposal is dropped outright when
//! it leaves the board, hits a wall, or walks into a bomb that cannot be kicked.
//! The remaining proposals then bounce when:
//!
//! * two or more agents target the same cell,
//! * two agents try to swap cells,
//! * two kicks would send bombs into the same cell,
//! * the target is occupied by an agent that is not moving (including agents
//!   that bounced), which is applied repeatedly until nothing changes.
//!
//! A successful move into a bomb is a kick: the agent takes the bomb's cell and
//! the bomb starts sliding on the next step.

use crate::engine::state::GameState;
use crate::types::{Direction, Move, Pos, Terrain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveResolution {
    pub positions: [Pos; 4],
    pub moved: [bool; 4],
    /// (bomb index, direction) for every kick that went through, by agent id.
    pub kicks: Vec<(usize, Direction)>,
}

#[derive(Clone, Copy)]
struct Intent {
    target: Pos,
    dir: Direction,
    kick: Option<(usize, Pos)>,
}

pub fn resolve_movement(state: &GameState, moves: &[Move; 4]) -> MoveResolution {
    let n = state.size();
    let mut bomb_at: Vec<Option<usize>> = vec![None; n * n];
    for (i, bomb) in state.bombs.iter().enumerate() {
        bomb_at[bomb.position.index(n)] = Some(i);
    }
    let occupied = |pos: Pos| state.agents.iter().any(|a| a.alive && a.position == pos);

    let mut intents: [Option<Intent>; 4] = [None; 4];
    for agent in state.agents.iter().filter(|a| a.alive) {
        let Some(dir) = moves[agent.id].direction() else { continue };
        let target = agent.position.step(dir);
        if !target.in_bounds(n) || state.terrain_at(target).is_wall() {
            continue;
        }
        let kick = match bomb_at[target.index(n)] {
            None => None,
            Some(bomb) => {
                let beyond = target.step(dir);
                let clear = agent.can_kick
                    && beyond.in_bounds(n)
                    && state.terrain_at(beyond) == Terrain::Passage
                    && bomb_at[beyond.index(n)].is_none()
                    && !occupied(beyond);
                if !clear {
                    continue;
                }
                Some((bomb, beyond))
            }
        };
        intents[agent.id] = Some(Intent { target, dir, kick });
    }

    let mut bounced = [false; 4];
    for i in 0..4 {
        for j in i + 1..4 {
            let (Some(a), Some(b)) = (intents[i], intents[j]) else { continue };
            let pos_i = state.agents[i].position;
            let pos_j = state.agents[j].position;
            let same_target = a.target == b.target;
            let swap = a.target == pos_j && b.target == pos_i;
            let bombs_collide = matches!((a.kick, b.kick), (Some((_, x)), Some((_, y))) if x == y);
            if same_target || swap || bombs_collide {
                bounced[i] = true;
                bounced[j] = true;
            }
        }
    }

    loop {
        let mut changed = false;
        for i in 0..4 {
            let Some(intent) = intents[i] else { continue };
            if bounced[i] {
                continue;
            }
            let blocked = state.agents.iter().any(|other| {
                other.alive
                    && other.id != i
                    && other.position == intent.target
                    && (intents[other.id].is_none() || bounced[other.id])
            });
            if blocked {
                bounced[i] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut positions = std::array::from_fn(|i| state.agents[i].position);
    let mut moved = [false; 4];
    let mut kicks = Vec::new();
    for i in 0..4 {
        if let Some(intent) = intents[i] {
            if !bounced[i] {
                positions[i] = intent.target;
                moved[i] = true;
                if let Some((bomb, _)) = intent.kick {
                    kicks.push((bomb, intent.dir));
                }
            }
        }
    }
    MoveResolution { positions, moved, kicks }
}
