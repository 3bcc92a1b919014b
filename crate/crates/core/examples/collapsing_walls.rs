//! Collapsing walls: from the start step on, every few steps the outermost
//! open ring turns to rigid wall, squeezing the survivors together.
//!
//! ```bash
//! cargo run --example collapsing_walls
//! ```

use pommer::agents::{by_name, EpisodeInfo};
use pommer::boardgen::generate;
use pommer::observe::{board_ascii, observe_all};
use pommer::{Action, GameConfig, Terrain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = GameConfig::ffa().with_seed(31).with_collapse(40, 20);
    let mut state = generate(&config)?;
    let mut agents: Vec<_> = (0..4).map(|i| by_name("simple", i).expect("registered")).collect();
    for (seat, agent) in agents.iter_mut().enumerate() {
        agent.reset(&EpisodeInfo::new(seat, config.mode, seat as u64));
    }

    let mut rigid = state.terrain.iter().filter(|t| **t == Terrain::Rigid).count();
    while !state.is_done() {
        let observations = observe_all(&state);
        let inputs: Vec<Option<Action>> =
            (0..4).map(|i| state.agents[i].alive.then(|| agents[i].act(&observations[i]))).collect();
        state.step_mut(&inputs)?;
        let now = state.terrain.iter().filter(|t| **t == Terrain::Rigid).count();
        if now != rigid {
            let alive: Vec<usize> = state.alive_ids().collect();
            println!("step {}: {} new rigid cells, alive {alive:?}", state.step, now - rigid);
            print!("{}", board_ascii(&observe_all(&state)[0].board));
            rigid = now;
        }
    }
    println!("result at step {}: {:?}", state.step, state.result.expect("finished"));
    Ok(())
}
