//! Record an episode, write it as JSON lines, read it back, verify it, then
//! flip one recorded action and watch verification fail.
//!
//! ```bash
//! cargo run --example replay_roundtrip
//! ```

use pommer::runner::{resimulate, run_episode, Replay, Seats};
use pommer::{Action, GameConfig, Move};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = GameConfig::team_radio().with_seed(8);
    let mut seats = Seats::builtin(["simple", "random", "simple", "random"])?;
    let replay = run_episode(&config, &mut seats)?;
    println!("{} steps, result {:?}, digest {}", replay.header.steps, replay.header.result, replay.header.final_digest);

    let dir = std::env::temp_dir().join("pommer-replay-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("episode.jsonl");
    replay.write(&path)?;
    println!("wrote {} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());

    let loaded = Replay::read(&path)?;
    let check = resimulate(&loaded)?;
    println!("re-simulated digest {} -> ok: {}", check.actual_digest, check.ok());

    let mut tampered = loaded.clone();
    let record = tampered.steps.iter_mut().find(|r| r.inputs[0].is_some()).expect("seat 0 acts at least once");
    let old = record.inputs[0].expect("asked");
    let mv = if old.mv == Move::Bomb { Move::Stop } else { Move::Bomb };
    record.inputs[0] = Some(Action { mv, ..old });
    let step = record.step;
    let check = resimulate(&tampered)?;
    println!(
        "after changing step {} for seat 0 from {:?} to {mv:?}: digest {} -> ok: {}",
        step, old.mv, check.actual_digest, check.ok()
    );
    Ok(())
}
