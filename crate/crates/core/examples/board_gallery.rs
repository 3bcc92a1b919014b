//! Print a few generated boards with their hidden power-ups, then sweep many
//! seeds and count how often each orbit holds wood.
//!
//! ```bash
//! cargo run --example board_gallery
//! ```

use pommer::boardgen::{generate, placeable_orbits};
use pommer::observe::board_ascii;
use pommer::{GameConfig, Terrain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for seed in 0..3 {
        let state = generate(&GameConfig::ffa().with_seed(seed))?;
        let mut board: Vec<u8> = state.grid.iter().map(|i| i.code()).collect();
        println!("seed {seed}: {} hidden items", state.hidden_items.len());
        print!("{}", board_ascii(&board));
        for (pos, kind) in &state.hidden_items {
            board[pos.index(state.size())] = kind.item().code();
        }
        println!("revealed:\n{}", board_ascii(&board));
    }

    let config = GameConfig::ffa();
    let orbits = placeable_orbits(config.board_size);
    let seeds = 2000;
    let mut wood = vec![0u32; orbits.len()];
    for seed in 0..seeds {
        let state = generate(&config.clone().with_seed(seed))?;
        for (k, cells) in orbits.iter().enumerate() {
            wood[k] += u32::from(state.terrain[cells[0].index(config.board_size)] == Terrain::Wood);
        }
    }
    println!("wood rate per orbit over {seeds} seeds (uniform would be {:.3}):", (config.num_wood / 4) as f64 / orbits.len() as f64);
    for (cells, hits) in orbits.iter().zip(&wood) {
        println!("  orbit of {}: {:.3}", cells[0], f64::from(*hits) / seeds as f64);
    }
    Ok(())
}
