//! Four SimpleAgents in free-for-all, aggregated per seat.
//!
//! ```bash
//! cargo run --release --example simple_selfplay_stats -- 500 7
//! ```
//!
//! Arguments are the number of games (default 200) and the match seed.

use std::time::Instant;

use pommer::runner::{run_match, MatchConfig, Preset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let games: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(200);
    let seed: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(7);

    let mut config = MatchConfig::builtin(Preset::Ffa, ["simple"; 4])?;
    config.games = games;
    config.seed = seed;

    let started = Instant::now();
    let report = run_match(&config)?;
    let stats = report.stats();
    print!("{}", stats.to_table());
    println!("{games} games in {:.2?}", started.elapsed());
    Ok(())
}
