//! Generate a board, play one free-for-all episode with four SimpleAgents and
//! print the board every 50 steps.
//!
//! ```bash
//! cargo run --example quickstart -- 42
//! ```

use pommer::agents::{AgentBehavior, EpisodeInfo, SimpleAgent};
use pommer::boardgen::generate;
use pommer::observe::{board_ascii, observe_all};
use pommer::rng::seat_seed;
use pommer::{Action, GameConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(42);
    let config = GameConfig::ffa().with_seed(seed);
    let mut state = generate(&config)?;

    let mut agents: Vec<SimpleAgent> = (0..4).map(|seat| SimpleAgent::new(seat_seed(seed, seat))).collect();
    for (seat, agent) in agents.iter_mut().enumerate() {
        agent.reset(&EpisodeInfo::new(seat, config.mode, seat_seed(seed, seat)));
    }

    while !state.is_done() {
        if state.step % 50 == 0 {
            println!("step {}\n{}", state.step, board_ascii(&observe_all(&state)[0].board));
        }
        let observations = observe_all(&state);
        let inputs: Vec<Option<Action>> =
            (0..4).map(|i| state.agents[i].alive.then(|| agents[i].act(&observations[i]))).collect();
        state.step_mut(&inputs)?;
    }

    println!("final board at step {}\n{}", state.step, board_ascii(&observe_all(&state)[0].board));
    println!("result: {:?}", state.result.expect("finished games have a result"));
    Ok(())
}
