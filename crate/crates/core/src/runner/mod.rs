//! Match orchestration: seats, episodes, the tie policy, replays and stats.
//!
//! A match is fully determined by its [`MatchConfig`]. Game `g` of a match
//! seeded with `S` uses `split_seed(S, g)`; its `a`-th attempt (reruns under
//! the competition policy) uses `split_seed(split_seed(S, g), a)`. The episode
//! seed is both the board seed and the parent of every seat's behavior seed.

mod replay;
mod stats;

use std::path::PathBuf;
use std::time::Duration;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agents::{by_name, EpisodeInfo, REGISTERED};
use crate::boardgen::generate;
use crate::config::GameConfig;
use crate::engine::{digest_hex, state_digest, MatchResult};
use crate::error::RunnerError;
use crate::observe::observe_all;
use crate::protocol::{AgentEndpoint, Transport, DEFAULT_TIMEOUT_MS};
use crate::rng::{seat_seed, split_seed};

pub use replay::{resimulate, verify_replay, Replay, ReplayHeader, StepRecord, Verification, FORMAT_VERSION};
pub use stats::{stats_report, SeatStats, StatsSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    Ffa,
    Team,
    TeamRadio,
    /// Team play under fog, no radio.
    Nips,
}

impl Preset {
    pub fn game_config(self) -> GameConfig {
        match self {
            Preset::Ffa => GameConfig::ffa(),
            Preset::Team => GameConfig::team(),
            Preset::TeamRadio => GameConfig::team_radio(),
            Preset::Nips => GameConfig::nips(),
        }
    }

    pub fn parse(s: &str) -> Option<Preset> {
        match s {
            "ffa" => Some(Preset::Ffa),
            "team" => Some(Preset::Team),
            "radio" => Some(Preset::TeamRadio),
            "nips" => Some(Preset::Nips),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TiePolicy {
    ReportTie,
    /// Rerun a tied game on a fresh seed; from the second tie on, rerun with
    /// collapsing walls until somebody wins.
    CompetitionRerun,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AgentSpec {
    Builtin(String),
    Remote(String),
}

impl AgentSpec {
    pub fn parse(s: &str) -> Result<AgentSpec, RunnerError> {
        let s = s.trim();
        if s.starts_with("http://") || s.starts_with("https://") {
            Ok(AgentSpec::Remote(s.to_string()))
        } else if REGISTERED.contains(&s) {
            Ok(AgentSpec::Builtin(s.to_string()))
        } else {
            Err(RunnerError::UnknownAgent(s.to_string()))
        }
    }

    pub fn label(&self) -> &str {
        match self {
            AgentSpec::Builtin(s) | AgentSpec::Remote(s) => s,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatchConfig {
    pub preset: Preset,
    pub agents: [AgentSpec; 4],
    pub games: usize,
    pub seed: u64,
    pub tie_policy: TiePolicy,
    pub timeout: Duration,
    /// When set, every episode's replay is written here.
    pub record_dir: Option<PathBuf>,
    /// `(start, every)` used once collapsing walls are switched on.
    pub collapse: (u32, u32),
    /// Attempts per game before giving up, counting failed episodes.
    pub max_attempts: usize,
    /// Episodes run on the rayon pool when every seat is in-process.
    pub parallel: bool,
}

impl MatchConfig {
    pub fn new(preset: Preset, agents: [AgentSpec; 4]) -> Self {
        MatchConfig {
            preset,
            agents,
            games: 1,
            seed: 0,
            tie_policy: TiePolicy::ReportTie,
            timeout: Duration::from_millis(DEFAULT_TIMEOUT_MS),
            record_dir: None,
            collapse: (400, 50),
            max_attempts: 10,
            parallel: true,
        }
    }

    pub fn builtin(preset: Preset, names: [&str; 4]) -> Result<Self, RunnerError> {
        let [a, b, c, d] = names.map(AgentSpec::parse);
        Ok(MatchConfig::new(preset, [a?, b?, c?, d?]))
    }

    /// Game config for one attempt.
    pub fn episode_config(&self, seed: u64, collapse: bool) -> GameConfig {
        let mut config = self.preset.game_config().with_seed(seed);
        if collapse {
            config = config.with_collapse(self.collapse.0, self.collapse.1);
        }
        config
    }

    fn all_in_process(&self) -> bool {
        self.agents.iter().all(|a| matches!(a, AgentSpec::Builtin(_)))
    }
}

/// The four endpoints of a match plus the transport that reaches remote ones.
pub struct Seats {
    pub endpoints: Vec<AgentEndpoint>,
    pub labels: [String; 4],
    transport: Transport,
}

impl Seats {
    pub fn new(specs: &[AgentSpec; 4], timeout: Duration) -> Result<Seats, RunnerError> {
        let mut endpoints = Vec::with_capacity(4);
        for spec in specs {
            let mut endpoint = match spec {
                AgentSpec::Builtin(name) => {
                    let behavior = by_name(name, 0).ok_or_else(|| RunnerError::UnknownAgent(name.clone()))?;
                    AgentEndpoint::in_process(behavior)
                }
                AgentSpec::Remote(url) => AgentEndpoint::remote(url.clone(), timeout),
            };
            endpoint.timeout = timeout;
            endpoints.push(endpoint);
        }
        Ok(Seats { endpoints, labels: specs.clone().map(|s| s.label().to_string()), transport: Transport::new() })
    }

    pub fn builtin(names: [&str; 4]) -> Result<Seats, RunnerError> {
        let specs = names.map(|n| AgentSpec::Builtin(n.to_string()));
        Seats::new(&specs, Duration::from_millis(DEFAULT_TIMEOUT_MS))
    }

    /// Seats made of already-built endpoints, for custom behaviors.
    pub fn from_endpoints(endpoints: [AgentEndpoint; 4]) -> Seats {
        let labels = [0, 1, 2, 3].map(|i| endpoints[i].label());
        Seats { endpoints: endpoints.into(), labels, transport: Transport::new() }
    }
}

/// Plays one episode on `config` (whose `rng_seed` is the episode seed) and
/// records it.
pub fn run_episode(config: &GameConfig, seats: &mut Seats) -> Result<Replay, RunnerError> {
    let mut state = generate(config)?;
    let mode = config.mode;
    let infos: Vec<EpisodeInfo> = (0..4)
        .map(|seat| EpisodeInfo {
            bomb_life: config.bomb_life,
            flame_life: config.flame_life,
            ..EpisodeInfo::new(seat, mode, seat_seed(config.rng_seed, seat))
        })
        .collect();
    seats.transport.init_episode(&mut seats.endpoints, &infos);

    let mut steps = Vec::with_capacity(256);
    let mut substitutions = [0u32; 4];
    while state.result.is_none() {
        if state.step > config.max_steps {
            return Err(RunnerError::NoResult(state.step));
        }
        let observations = observe_all(&state);
        let asked: Vec<Option<_>> =
            (0..4).map(|i| state.agents[i].alive.then_some(&observations[i])).collect();
        let outcomes = seats.transport.request_all(&mut seats.endpoints, &asked, mode, state.step);

        let mut record = StepRecord { step: state.step, inputs: [None; 4], substituted: [false; 4], reasons: Default::default() };
        for (seat, outcome) in outcomes.into_iter().enumerate() {
            let Some(outcome) = outcome else { continue };
            record.inputs[seat] = Some(outcome.action);
            if let Some(reason) = outcome.substituted {
                record.substituted[seat] = true;
                record.reasons[seat] = Some(reason.to_string());
                substitutions[seat] += 1;
            }
        }
        state.step_mut(&record.inputs)?;
        steps.push(record);
    }

    let result = state.result.clone().expect("loop ends on a result");
    seats.transport.end_episode(&mut seats.endpoints, &result);
    let header = ReplayHeader {
        format_version: FORMAT_VERSION,
        config: config.clone(),
        agents: seats.labels.clone(),
        result,
        steps: state.step,
        final_digest: digest_hex(state_digest(&state)),
        substitutions,
    };
    Ok(Replay { header, steps })
}

/// One played (or failed) episode of a match.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpisodeSummary {
    pub index: usize,
    pub game: usize,
    pub attempt: usize,
    pub seed: u64,
    pub collapse: bool,
    /// `None` when the episode failed; see `error`.
    pub header: Option<ReplayHeader>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub episodes: Vec<EpisodeSummary>,
    /// Final outcome per game: the last attempt's result, `None` if every attempt failed.
    pub games: Vec<Option<MatchResult>>,
}

impl MatchReport {
    pub fn stats(&self) -> StatsSummary {
        stats_report(self.episodes.iter().filter_map(|e| e.header.as_ref()))
    }

    pub fn failures(&self) -> usize {
        self.episodes.iter().filter(|e| e.error.is_some()).count()
    }
}

/// Where the tie policy wants the next attempt of a game to go.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub attempt: usize,
    pub seed: u64,
    pub collapse: bool,
}

/// Drives the attempts of a single game through `play`, applying the tie
/// policy. `play` returns the result of an attempt or an error message.
pub fn play_game<F>(game_seed: u64, policy: TiePolicy, max_attempts: usize, mut play: F) -> Vec<(Attempt, Result<MatchResult, String>)>
where
    F: FnMut(Attempt) -> Result<MatchResult, String>,
{
    let mut played = Vec::new();
    let mut ties = 0;
    for attempt in 0..max_attempts.max(1) {
        let plan = Attempt { attempt, seed: split_seed(game_seed, attempt as u64), collapse: ties >= 2 };
        let outcome = play(plan);
        let done = match &outcome {
            Ok(result) if result.is_tie() => {
                ties += 1;
                policy == TiePolicy::ReportTie
            }
            Ok(_) => true,
            Err(_) => false,
        };
        played.push((plan, outcome));
        if done {
            break;
        }
    }
    played
}

fn play_one_game(config: &MatchConfig, game: usize, seats: &mut Seats) -> Vec<(Attempt, Result<Replay, RunnerError>)> {
    let game_seed = split_seed(config.seed, game as u64);
    let mut replays = Vec::new();
    play_game(game_seed, config.tie_policy, config.max_attempts, |plan| {
        let outcome = run_episode(&config.episode_config(plan.seed, plan.collapse), seats);
        let result = match &outcome {
            Ok(replay) => Ok(replay.result().clone()),
            Err(e) => Err(e.to_string()),
        };
        replays.push((plan, outcome));
        result
    });
    replays
}

/// Plays `config.games` games and returns the report. Replays are written to
/// `config.record_dir` as `episode-NNNNN.jsonl` when it is set.
pub fn run_match(config: &MatchConfig) -> Result<MatchReport, RunnerError> {
    if let Some(dir) = &config.record_dir {
        std::fs::create_dir_all(dir).map_err(|e| RunnerError::Setup(format!("{}: {e}", dir.display())))?;
    }
    let per_game: Vec<Vec<(Attempt, Result<Replay, RunnerError>)>> = if config.parallel && config.all_in_process() {
        (0..config.games)
            .into_par_iter()
            .map(|game| -> Result<_, RunnerError> {
                let mut seats = Seats::new(&config.agents, config.timeout)?;
                Ok(play_one_game(config, game, &mut seats))
            })
            .collect::<Result<_, _>>()?
    } else {
        let mut seats = Seats::new(&config.agents, config.timeout)?;
        (0..config.games).map(|game| play_one_game(config, game, &mut seats)).collect()
    };

    let mut report = MatchReport::default();
    for (game, attempts) in per_game.into_iter().enumerate() {
        let mut last = None;
        for (plan, outcome) in attempts {
            let index = report.episodes.len();
            let (header, error) = match outcome {
                Ok(replay) => {
                    if let Some(dir) = &config.record_dir {
                        replay.write(&dir.join(format!("episode-{index:05}.jsonl")))?;
                    }
                    last = Some(replay.header.result.clone());
                    (Some(replay.header), None)
                }
                Err(e) => {
                    warn!("game {game} attempt {} failed: {e}", plan.attempt);
                    (None, Some(e.to_string()))
                }
            };
            report.episodes.push(EpisodeSummary { index, game, attempt: plan.attempt, seed: plan.seed, collapse: plan.collapse, header, error });
        }
        info!("game {game}: {last:?}");
        report.games.push(last);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ResultKind;

    fn scripted(outcomes: Vec<Result<MatchResult, String>>) -> Vec<(Attempt, Result<MatchResult, String>)> {
        let mut it = outcomes.into_iter();
        play_game(99, TiePolicy::CompetitionRerun, 10, |_| it.next().expect("script long enough"))
    }

    #[test]
    fn tie_then_win_stops_after_two() {
        let played = scripted(vec![Ok(MatchResult::tie()), Ok(MatchResult::win(vec![2]))]);
        assert_eq!(played.len(), 2);
        assert!(played.iter().all(|(a, _)| !a.collapse));
        assert_eq!(played[1].1.as_ref().unwrap().winners, vec![2]);
        assert_ne!(played[0].0.seed, played[1].0.seed);
    }

    #[test]
    fn second_tie_switches_collapse_on() {
        let played = scripted(vec![
            Ok(MatchResult::tie()),
            Ok(MatchResult::tie()),
            Ok(MatchResult::tie()),
            Ok(MatchResult::win(vec![0])),
        ]);
        let collapse: Vec<bool> = played.iter().map(|(a, _)| a.collapse).collect();
        assert_eq!(collapse, vec![false, false, true, true]);
    }

    #[test]
    fn report_policy_keeps_the_tie() {
        let played = play_game(1, TiePolicy::ReportTie, 10, |_| Ok(MatchResult::tie()));
        assert_eq!(played.len(), 1);
        assert_eq!(played[0].1.as_ref().unwrap().kind, ResultKind::Tie);
    }

    #[test]
    fn failures_retry_up_to_the_cap() {
        let played = play_game(1, TiePolicy::ReportTie, 3, |_| Err("boom".into()));
        assert_eq!(played.len(), 3);
        let seeds: std::collections::BTreeSet<u64> = played.iter().map(|(a, _)| a.seed).collect();
        assert_eq!(seeds.len(), 3);
    }

    #[test]
    fn agent_specs() {
        assert_eq!(AgentSpec::parse("simple").unwrap(), AgentSpec::Builtin("simple".into()));
        assert!(matches!(AgentSpec::parse("http://127.0.0.1:9000").unwrap(), AgentSpec::Remote(_)));
        assert!(matches!(AgentSpec::parse("nobody"), Err(RunnerError::UnknownAgent(_))));
    }

    #[test]
    fn nips_preset_has_fog_and_no_radio() {
        let c = Preset::Nips.game_config();
        assert!(c.fog_enabled && c.mode.is_team() && !c.mode.has_radio());
    }

    #[test]
    fn episode_replay_round_trips_and_verifies() {
        let mut seats = Seats::builtin(["simple"; 4]).unwrap();
        let config = GameConfig::ffa().with_seed(5);
        let replay = run_episode(&config, &mut seats).unwrap();
        assert_eq!(replay.steps.len() as u32, replay.header.steps);
        let parsed = Replay::from_jsonl(&replay.to_jsonl()).unwrap();
        assert_eq!(parsed, replay);
        assert!(verify_replay(&parsed).unwrap());
        // same seed, same seats, same replay
        assert_eq!(run_episode(&config, &mut seats).unwrap(), replay);
    }

    #[test]
    fn flipped_action_fails_verification() {
        let mut seats = Seats::builtin(["random"; 4]).unwrap();
        let mut replay = run_episode(&GameConfig::ffa().with_seed(11), &mut seats).unwrap();
        let target = replay.steps.iter().position(|r| r.inputs[0].is_some()).unwrap();
        let a = replay.steps[target].inputs[0].as_mut().unwrap();
        a.mv = if a.mv == crate::types::Move::Bomb { crate::types::Move::Stop } else { crate::types::Move::Bomb };
        assert!(!verify_replay(&replay).unwrap());
    }

    #[test]
    fn version_mismatch_is_explicit() {
        let mut seats = Seats::builtin(["random"; 4]).unwrap();
        let replay = run_episode(&GameConfig::ffa().with_seed(3), &mut seats).unwrap();
        let text = replay.to_jsonl().replacen("\"format_version\":1", "\"format_version\":7", 1);
        assert!(matches!(Replay::from_jsonl(&text), Err(crate::error::ReplayError::Version { found: 7, expected: 1 })));
    }

    #[test]
    fn empty_stats() {
        let s = stats_report(std::iter::empty());
        assert_eq!(s.episodes, 0);
        assert_eq!(s.mean_length, 0.0);
        assert!(s.to_table().contains("episodes: 0"));
    }

    #[test]
    fn max_steps_ends_in_tie() {
        let mut seats = Seats::builtin(["random"; 4]).unwrap();
        let mut config = GameConfig::ffa().with_seed(8);
        config.max_steps = 3;
        let replay = run_episode(&config, &mut seats).unwrap();
        assert!(replay.result().is_tie());
        assert_eq!(replay.header.steps, 3);
    }
}
