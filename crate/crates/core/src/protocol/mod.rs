//! The remote-agent wire protocol.
//!
//! Runner side ([`Transport`]) posts each agent's encoded observation to
//! `<base>/act` and expects `{"action": 0..=5}` back, plus `"message": [w1, w2]`
//! with words in `[1, 8]` when radio is on. Anything late, unreachable or
//! malformed is replaced by Stop with silence, counted on the endpoint and
//! logged; the match never aborts because of an agent.
//!
//! Agent side ([`serve_agent`]) exposes a behavior over the same endpoints so
//! built-in agents can stand in for remote submissions.
//!
//! | method | path           | body in          | body out                     |
//! |--------|----------------|------------------|------------------------------|
//! | GET    | `/ping`        | none             | `{"protocol":1,"agent":name}`|
//! | POST   | `/act`         | observation JSON | act response JSON            |
//! | POST   | `/init`        | [`EpisodeInfo`]  | empty (optional)             |
//! | POST   | `/episode_end` | [`MatchResult`]  | empty (optional)             |
//!
//! Every response carries the `X-Pommer-Proto: 1` header.
//!
//! [`EpisodeInfo`]: crate::agents::EpisodeInfo
//! [`MatchResult`]: crate::engine::MatchResult

mod client;
mod server;

use serde::{Deserialize, Serialize};

use crate::config::Mode;
use crate::error::WireError;
use crate::types::{Action, Move};

pub use client::{ActOutcome, AgentEndpoint, EndpointKind, EndpointStats, SubstitutionReason, Transport};
pub use server::{serve_agent, ServerHandle};

pub const PROTO_HEADER: &str = "X-Pommer-Proto";
pub const PROTO_VERSION: u32 = 1;
pub const DEFAULT_TIMEOUT_MS: u64 = 100;

/// Body returned by `/act`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActResponse {
    pub action: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<Vec<i64>>,
}

impl From<Action> for ActResponse {
    fn from(a: Action) -> Self {
        ActResponse { action: a.mv.code() as i64, message: a.message.map(|m| vec![m[0] as i64, m[1] as i64]) }
    }
}

/// Validates a raw `/act` body for the given mode.
pub fn parse_act_response(body: &[u8], mode: Mode) -> Result<Action, WireError> {
    let raw: ActResponse = serde_json::from_slice(body).map_err(|e| WireError::Syntax(e.to_string()))?;
    let mv = u8::try_from(raw.action)
        .ok()
        .and_then(Move::from_code)
        .ok_or_else(|| WireError::field("action", format!("{} outside [0, 5]", raw.action)))?;
    if !mode.has_radio() {
        return Ok(Action::new(mv));
    }
    let words = raw.message.ok_or_else(|| WireError::field("message", "required with radio"))?;
    if words.len() != 2 {
        return Err(WireError::field("message", format!("expected 2 words, got {}", words.len())));
    }
    let mut message = [0u8; 2];
    for (slot, w) in message.iter_mut().zip(&words) {
        if !(1..=8).contains(w) {
            return Err(WireError::field("message", format!("word {w} outside [1, 8]")));
        }
        *slot = *w as u8;
    }
    Ok(Action::with_message(mv, message))
}
