//! What each seat sees under the fog preset, and the exact JSON sent to a
//! remote agent.
//!
//! ```bash
//! cargo run --example fog_observation
//! ```

use pommer::boardgen::generate;
use pommer::observe::{board_ascii, encode_observation, observe, observe_all};
use pommer::{Action, GameConfig, Move};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut state = generate(&GameConfig::nips().with_seed(3))?;
    // walk everyone a few steps toward the middle
    for mv in [Move::Down, Move::Right, Move::Down] {
        let inputs = vec![Some(Action::new(mv)); 4];
        state.step_mut(&inputs)?;
    }

    let full = observe(&state, 0, &GameConfig { fog_enabled: false, ..state.config.clone() });
    println!("full board:\n{}", board_ascii(&full.board));
    for (seat, obs) in observe_all(&state).iter().enumerate() {
        println!("seat {seat} at {:?}, teammate {}, enemies {:?}:", obs.position, obs.teammate, obs.enemies);
        println!("{}", board_ascii(&obs.board));
    }

    let wire = encode_observation(&observe_all(&state)[0]);
    println!("seat 0 on the wire ({} bytes):\n{wire}", wire.len());
    Ok(())
}
