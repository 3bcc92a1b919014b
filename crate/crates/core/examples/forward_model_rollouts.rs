//! The engine is a pure function, so a planner can clone the state and try
//! moves. Here seat 0 scores each of its six moves by how often it survives
//! random rollouts of the next 15 steps.
//!
//! ```bash
//! cargo run --release --example forward_model_rollouts
//! ```

use pommer::boardgen::generate;
use pommer::rng::game_rng;
use pommer::{Action, GameConfig, GameState, Move};
use rand::Rng;

const ROLLOUTS: usize = 200;
const DEPTH: usize = 15;

fn random_inputs(state: &GameState, rng: &mut impl Rng) -> Vec<Option<Action>> {
    (0..4).map(|i| state.agents[i].alive.then(|| Action::new(Move::ALL[rng.gen_range(0..6)]))).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = game_rng(5);
    let mut state = generate(&GameConfig::ffa().with_seed(5))?;
    // seat 0 lays a bomb and the game moves on a bit
    state.step_mut(&[Some(Action::new(Move::Bomb)), Some(Action::STOP), Some(Action::STOP), Some(Action::STOP)])?;
    for _ in 0..3 {
        let mut inputs = random_inputs(&state, &mut rng);
        inputs[0] = Some(Action::STOP);
        state.step_mut(&inputs)?;
    }

    for first in Move::ALL {
        let mut survived = 0;
        for _ in 0..ROLLOUTS {
            let mut sim = state.clone();
            let mut inputs = random_inputs(&sim, &mut rng);
            inputs[0] = Some(Action::new(first));
            sim.step_mut(&inputs)?;
            for _ in 0..DEPTH {
                if sim.is_done() {
                    break;
                }
                let inputs = random_inputs(&sim, &mut rng);
                sim.step_mut(&inputs)?;
            }
            survived += usize::from(sim.agents[0].alive);
        }
        println!("{first:?}: survives {:.0}% of rollouts", 100.0 * survived as f64 / ROLLOUTS as f64);
    }
    Ok(())
}
