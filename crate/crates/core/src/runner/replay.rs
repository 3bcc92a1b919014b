//! JSON-lines replay files.
//!
//! Line 1 is a [`ReplayHeader`]; every following line is one [`StepRecord`].
//! Inputs are stored exactly as fed to the engine, so re-simulation needs
//! nothing but the file.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::boardgen::generate;
use crate::config::GameConfig;
use crate::engine::{digest_hex, state_digest, GameState, MatchResult};
use crate::error::ReplayError;
use crate::types::Action;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayHeader {
    pub format_version: u32,
    pub config: GameConfig,
    /// Seat labels: a registered behavior name or an endpoint URL.
    pub agents: [String; 4],
    pub result: MatchResult,
    pub steps: u32,
    pub final_digest: String,
    pub substitutions: [u32; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: u32,
    /// `None` for seats that were dead and therefore not asked.
    pub inputs: [Option<Action>; 4],
    pub substituted: [bool; 4],
    #[serde(default, skip_serializing_if = "all_none")]
    pub reasons: [Option<String>; 4],
}

fn all_none(reasons: &[Option<String>; 4]) -> bool {
    reasons.iter().all(Option::is_none)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub header: ReplayHeader,
    pub steps: Vec<StepRecord>,
}

impl Replay {
    pub fn result(&self) -> &MatchResult {
        &self.header.result
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&self.header).expect("header serializes");
        out.push('\n');
        for record in &self.steps {
            out.push_str(&serde_json::to_string(record).expect("step serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Replay, ReplayError> {
        Replay::from_lines(text.lines().map(|l| Ok(l.to_string())))
    }

    pub fn write(&self, path: &Path) -> Result<(), ReplayError> {
        let mut w = BufWriter::new(fs::File::create(path)?);
        w.write_all(self.to_jsonl().as_bytes())?;
        w.flush()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Replay, ReplayError> {
        let reader = BufReader::new(fs::File::open(path)?);
        Replay::from_lines(reader.lines())
    }

    /// Reads only the first line of a replay file.
    pub fn read_header(path: &Path) -> Result<ReplayHeader, ReplayError> {
        let mut line = String::new();
        BufReader::new(fs::File::open(path)?).read_line(&mut line)?;
        parse_header(&line)
    }

    fn from_lines<I>(lines: I) -> Result<Replay, ReplayError>
    where
        I: Iterator<Item = std::io::Result<String>>,
    {
        let mut lines = lines.filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()));
        let first = lines.next().ok_or_else(|| ReplayError::Format("empty replay".into()))??;
        let header = parse_header(&first)?;
        let mut steps = Vec::with_capacity(header.steps as usize);
        for (i, line) in lines.enumerate() {
            let record: StepRecord = serde_json::from_str(&line?)
                .map_err(|e| ReplayError::Format(format!("step record {}: {e}", i + 1)))?;
            steps.push(record);
        }
        Ok(Replay { header, steps })
    }
}

fn parse_header(line: &str) -> Result<ReplayHeader, ReplayError> {
    let value: serde_json::Value =
        serde_json::from_str(line).map_err(|e| ReplayError::Format(format!("header: {e}")))?;
    let found = value
        .get("format_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| ReplayError::Format("header has no format_version".into()))?;
    if found != u64::from(FORMAT_VERSION) {
        return Err(ReplayError::Version { found: found as u32, expected: FORMAT_VERSION });
    }
    serde_json::from_value(value).map_err(|e| ReplayError::Format(format!("header: {e}")))
}

/// What re-simulation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub expected_digest: String,
    pub actual_digest: String,
    pub expected_result: MatchResult,
    pub actual_result: Option<MatchResult>,
    /// Set when the recorded inputs were rejected by the engine.
    pub engine_error: Option<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.engine_error.is_none()
            && self.expected_digest == self.actual_digest
            && self.actual_result.as_ref() == Some(&self.expected_result)
    }
}

/// Replays the recorded inputs from a freshly generated board.
pub fn resimulate(replay: &Replay) -> Result<Verification, ReplayError> {
    let header = &replay.header;
    let mut state: GameState = generate(&header.config)?;
    let mut engine_error = None;
    for record in &replay.steps {
        if let Err(e) = state.step_mut(&record.inputs) {
            engine_error = Some(format!("step {}: {e}", record.step));
            break;
        }
    }
    Ok(Verification {
        expected_digest: header.final_digest.clone(),
        actual_digest: digest_hex(state_digest(&state)),
        expected_result: header.result.clone(),
        actual_result: state.result.clone(),
        engine_error,
    })
}

/// True iff re-simulation reproduces the recorded digest and result.
pub fn verify_replay(replay: &Replay) -> Result<bool, ReplayError> {
    Ok(resimulate(replay)?.ok())
}
