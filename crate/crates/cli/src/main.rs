//! `pommer`: run matches, verify replays, summarize recordings and serve
//! built-in agents over HTTP.
//!
//! Every flag can also be set through an environment variable named
//! `POMMER_<FLAG>`, e.g. `POMMER_SEED=7` or `POMMER_TIMEOUT_MS=250`.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 runtime failure.

use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use pommer::agents::{by_name, REGISTERED};
use pommer::error::ReplayError;
use pommer::protocol::serve_agent;
use pommer::runner::{resimulate, run_match, stats_report, AgentSpec, MatchConfig, Preset, Replay, StatsSummary, TiePolicy};

const USAGE: u8 = 1;
const VERIFY_FAILED: u8 = 2;
const RUNTIME: u8 = 3;

#[derive(Parser)]
#[command(name = "pommer", version, about = "Deterministic Pommerman matches, replays and agent servers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play a match and print per-seat statistics.
    Run(RunArgs),
    /// Re-simulate a replay and compare its final digest.
    Verify {
        #[arg(long, env = "POMMER_REPLAY")]
        replay: PathBuf,
    },
    /// Summarize every replay in a directory.
    Stats {
        #[arg(long, env = "POMMER_DIR")]
        dir: PathBuf,
    },
    /// Expose a built-in agent over the HTTP protocol.
    Serve {
        #[arg(long, env = "POMMER_AGENT", default_value = "simple")]
        agent: String,
        #[arg(long, env = "POMMER_PORT", default_value_t = 8000)]
        port: u16,
        #[arg(long, env = "POMMER_HOST", default_value = "127.0.0.1")]
        host: String,
        /// Seed for the agent's own random stream.
        #[arg(long, env = "POMMER_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Ffa,
    Team,
    Radio,
    Nips,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    Report,
    Competition,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, env = "POMMER_PRESET", value_enum, default_value = "ffa")]
    preset: PresetArg,
    /// Four comma-separated seats, each a registered name or an http:// URL.
    #[arg(long, env = "POMMER_AGENTS", default_value = "simple,simple,simple,simple")]
    agents: String,
    #[arg(long, env = "POMMER_EPISODES", default_value_t = 1)]
    episodes: usize,
    #[arg(long, env = "POMMER_SEED", default_value_t = 0)]
    seed: u64,
    /// Directory for one replay per episode plus `stats.json`.
    #[arg(long, env = "POMMER_RECORD")]
    record: Option<PathBuf>,
    #[arg(long, env = "POMMER_TIE_POLICY", value_enum, default_value = "report")]
    tie_policy: TieArg,
    #[arg(long, env = "POMMER_TIMEOUT_MS", default_value_t = 100)]
    timeout_ms: u64,
}

/// A failure carrying the exit code it maps to.
struct Failure(u8, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(USAGE, msg.into())
}

fn runtime(msg: impl std::fmt::Display) -> Failure {
    Failure(RUNTIME, msg.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("POMMER_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => run(args),
        Command::Verify { replay } => verify(&replay),
        Command::Stats { dir } => stats(&dir),
        Command::Serve { agent, port, host, seed } => serve(&agent, &host, port, seed),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn parse_agents(list: &str) -> Result<[AgentSpec; 4], Failure> {
    let specs = list.split(',').map(AgentSpec::parse).collect::<Result<Vec<_>, _>>().map_err(|e| usage(e.to_string()))?;
    let n = specs.len();
    specs.try_into().map_err(|_| usage(format!("--agents needs exactly 4 seats, got {n}")))
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let preset = match args.preset {
        PresetArg::Ffa => Preset::Ffa,
        PresetArg::Team => Preset::Team,
        PresetArg::Radio => Preset::TeamRadio,
        PresetArg::Nips => Preset::Nips,
    };
    let mut config = MatchConfig::new(preset, parse_agents(&args.agents)?);
    config.games = args.episodes;
    config.seed = args.seed;
    config.timeout = Duration::from_millis(args.timeout_ms);
    config.record_dir = args.record.clone();
    config.tie_policy = match args.tie_policy {
        TieArg::Report => TiePolicy::ReportTie,
        TieArg::Competition => TiePolicy::CompetitionRerun,
    };

    let report = run_match(&config).map_err(runtime)?;
    let summary = report.stats();
    print!("{}", summary.to_table());
    if let Some(dir) = &args.record {
        write_summary(dir, &summary)?;
    }
    for failed in report.episodes.iter().filter(|e| e.error.is_some()) {
        eprintln!("episode {} (game {}): {}", failed.index, failed.game, failed.error.as_deref().unwrap_or_default());
    }
    let unfinished = report.games.iter().filter(|g| g.is_none()).count();
    if unfinished > 0 {
        return Err(runtime(format!("{unfinished} of {} games produced no result", report.games.len())));
    }
    Ok(())
}

fn verify(path: &Path) -> Result<(), Failure> {
    let replay = match Replay::read(path) {
        Ok(r) => r,
        Err(e @ ReplayError::Version { .. }) => return Err(Failure(VERIFY_FAILED, format!("{}: {e}", path.display()))),
        Err(e) => return Err(runtime(format!("{}: {e}", path.display()))),
    };
    let check = resimulate(&replay).map_err(runtime)?;
    if check.ok() {
        println!("ok {} steps, digest {}", replay.steps.len(), check.actual_digest);
        return Ok(());
    }
    let mut detail = format!("digest {} expected {}", check.actual_digest, check.expected_digest);
    if let Some(e) = &check.engine_error {
        detail += &format!("; engine rejected input at {e}");
    }
    if check.actual_result.as_ref() != Some(&check.expected_result) {
        detail += &format!("; result {:?} expected {:?}", check.actual_result, check.expected_result);
    }
    println!("mismatch {detail}");
    Err(Failure(VERIFY_FAILED, format!("{} does not reproduce", path.display())))
}

fn stats(dir: &Path) -> Result<(), Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| runtime(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> =
        entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "jsonl")).collect();
    files.sort();
    let headers = files.iter().map(|p| Replay::read_header(p).map_err(|e| runtime(format!("{}: {e}", p.display())))).collect::<Result<Vec<_>, _>>()?;
    let summary = stats_report(&headers);
    print!("{}", summary.to_table());
    write_summary(dir, &summary)
}

fn write_summary(dir: &Path, summary: &StatsSummary) -> Result<(), Failure> {
    let path = dir.join("stats.json");
    std::fs::write(&path, summary.to_json()).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

fn serve(agent: &str, host: &str, port: u16, seed: u64) -> Result<(), Failure> {
    let behavior = by_name(agent, seed).ok_or_else(|| usage(format!("unknown agent `{agent}` (known: {})", REGISTERED.join(", "))))?;
    let addr: SocketAddr = format!("{host}:{port}").parse().map_err(|e| usage(format!("bad address {host}:{port}: {e}")))?;
    let server = serve_agent(behavior, addr).map_err(|e| runtime(format!("bind {addr}: {e}")))?;
    println!("serving {agent} on {}", server.url());
    server.wait();
    Ok(())
}
