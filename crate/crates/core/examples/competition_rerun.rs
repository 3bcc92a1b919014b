//! The competition tie policy: a tied game is replayed on a fresh seed, and
//! from the second tie on with collapsing walls, until somebody wins.
//!
//! ```bash
//! cargo run --release --example competition_rerun -- 20
//! ```

use pommer::runner::{run_match, MatchConfig, Preset, TiePolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let games: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(10);
    let mut config = MatchConfig::builtin(Preset::Team, ["simple"; 4])?;
    config.games = games;
    config.seed = 2;
    config.tie_policy = TiePolicy::CompetitionRerun;

    let report = run_match(&config)?;
    for e in &report.episodes {
        let header = e.header.as_ref().expect("in-process episodes do not fail");
        println!(
            "game {:>2} attempt {} seed {:>20} collapse {:<5} -> {:?} {:?} after {} steps",
            e.game, e.attempt, e.seed, e.collapse, header.result.kind, header.result.winners, header.steps
        );
    }
    let decided = report.games.iter().flatten().filter(|r| !r.is_tie()).count();
    println!("{decided}/{games} games decided in {} episodes", report.episodes.len());
    Ok(())
}
