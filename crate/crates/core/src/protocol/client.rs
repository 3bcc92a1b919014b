use std::fmt;
use std::sync::OnceLock;
use std::time::Duration;

use futures::future::join_all;
use log::warn;
use tokio::runtime::Runtime;

use crate::agents::{AgentBehavior, EpisodeInfo};
use crate::config::Mode;
use crate::engine::MatchResult;
use crate::observe::{encode_observation, Observation};
use crate::protocol::{parse_act_response, DEFAULT_TIMEOUT_MS, PROTO_HEADER, PROTO_VERSION};
use crate::types::{Action, SILENCE};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EndpointStats {
    pub requests: u64,
    pub timeouts: u64,
    pub errors: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstitutionReason {
    Timeout,
    Connection(String),
    Status(u16),
    Malformed(String),
}

impl fmt::Display for SubstitutionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstitutionReason::Timeout => write!(f, "timeout"),
            SubstitutionReason::Connection(e) => write!(f, "connection: {e}"),
            SubstitutionReason::Status(code) => write!(f, "http status {code}"),
            SubstitutionReason::Malformed(e) => write!(f, "malformed: {e}"),
        }
    }
}

/// The action actually fed to the engine, and why it was substituted if it was.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActOutcome {
    pub action: Action,
    pub substituted: Option<SubstitutionReason>,
}

impl ActOutcome {
    fn real(action: Action) -> Self {
        ActOutcome { action, substituted: None }
    }

    /// Stop, plus silence when radio is on.
    fn substitute(mode: Mode, reason: SubstitutionReason) -> Self {
        let action = if mode.has_radio() { Action::with_message(crate::types::Move::Stop, SILENCE) } else { Action::STOP };
        ActOutcome { action, substituted: Some(reason) }
    }
}

pub enum EndpointKind {
    InProcess(Box<dyn AgentBehavior>),
    Remote { base_url: String },
}

pub struct AgentEndpoint {
    pub kind: EndpointKind,
    pub timeout: Duration,
    pub stats: EndpointStats,
}

impl AgentEndpoint {
    pub fn in_process(behavior: Box<dyn AgentBehavior>) -> Self {
        AgentEndpoint {
            kind: EndpointKind::InProcess(behavior),
            timeout: Duration::from_millis(DEFAULT_TIMEOUT_MS),
            stats: EndpointStats::default(),
        }
    }

    pub fn remote(base_url: impl Into<String>, timeout: Duration) -> Self {
        assert!(!timeout.is_zero(), "endpoint timeout must be positive");
        let base_url = base_url.into().trim_end_matches('/').to_string();
        AgentEndpoint { kind: EndpointKind::Remote { base_url }, timeout, stats: EndpointStats::default() }
    }

    pub fn is_remote(&self) -> bool {
        matches!(self.kind, EndpointKind::Remote { .. })
    }

    pub fn label(&self) -> String {
        match &self.kind {
            EndpointKind::InProcess(b) => b.name().to_string(),
            EndpointKind::Remote { base_url } => base_url.clone(),
        }
    }
}

/// HTTP plumbing shared by all remote endpoints of a match. The async runtime
/// is only started the first time a remote endpoint is contacted.
#[derive(Default)]
pub struct Transport {
    net: OnceLock<(Runtime, reqwest::Client)>,
}

enum Reply {
    Body(Vec<u8>),
    Failed(SubstitutionReason),
}

async fn post(http: &reqwest::Client, url: String, body: String, timeout: Duration) -> Reply {
    let exchange = async {
        let resp = http
            .post(url)
            .header(PROTO_HEADER, PROTO_VERSION.to_string())
            .header("content-type", "application/json")
            .body(body)
            .send()
            .await
            .map_err(|e| SubstitutionReason::Connection(e.to_string()))?;
        let status = resp.status();
        if !status.is_success() {
            return Err(SubstitutionReason::Status(status.as_u16()));
        }
        let bytes = resp.bytes().await.map_err(|e| SubstitutionReason::Connection(e.to_string()))?;
        Ok(bytes.to_vec())
    };
    match tokio::time::timeout(timeout, exchange).await {
        Err(_) => Reply::Failed(SubstitutionReason::Timeout),
        Ok(Err(reason)) => Reply::Failed(reason),
        Ok(Ok(body)) => Reply::Body(body),
    }
}

impl Transport {
    pub fn new() -> Self {
        Transport::default()
    }

    fn net(&self) -> &(Runtime, reqwest::Client) {
        self.net.get_or_init(|| {
            let runtime = tokio::runtime::Builder::new_multi_thread()
                .worker_threads(2)
                .enable_all()
                .build()
                .expect("tokio runtime starts");
            let http = reqwest::Client::builder().pool_max_idle_per_host(4).build().expect("http client builds");
            (runtime, http)
        })
    }

    /// Queries one endpoint. Never fails: problems become a substituted Stop.
    pub fn request_act(&self, endpoint: &mut AgentEndpoint, obs: &Observation, mode: Mode, step: u32) -> ActOutcome {
        let mut out = self.request_all(std::slice::from_mut(endpoint), &[Some(obs)], mode, step);
        out.pop().flatten().expect("one outcome per queried endpoint")
    }

    /// Queries every endpoint that has an observation, concurrently for remote
    /// ones. The result is index-aligned with `endpoints`; `None` where no
    /// observation was given.
    pub fn request_all(
        &self,
        endpoints: &mut [AgentEndpoint],
        observations: &[Option<&Observation>],
        mode: Mode,
        step: u32,
    ) -> Vec<Option<ActOutcome>> {
        assert_eq!(endpoints.len(), observations.len());
        let mut outcomes: Vec<Option<ActOutcome>> = vec![None; endpoints.len()];
        let mut pending = Vec::new();
        for (i, (endpoint, obs)) in endpoints.iter_mut().zip(observations).enumerate() {
            let Some(obs) = obs else { continue };
            endpoint.stats.requests += 1;
            match &mut endpoint.kind {
                EndpointKind::InProcess(behavior) => outcomes[i] = Some(ActOutcome::real(behavior.act(obs))),
                EndpointKind::Remote { base_url } => {
                    let url = format!("{base_url}/act");
                    pending.push((i, post(&self.net().1, url, encode_observation(obs), endpoint.timeout)));
                }
            }
        }
        if pending.is_empty() {
            return outcomes;
        }

        let (ids, futures): (Vec<usize>, Vec<_>) = pending.into_iter().unzip();
        let replies = self.net().0.block_on(join_all(futures));
        for (i, reply) in ids.into_iter().zip(replies) {
            let endpoint = &mut endpoints[i];
            let outcome = match reply {
                Reply::Body(body) => match parse_act_response(&body, mode) {
                    Ok(action) => ActOutcome::real(action),
                    Err(e) => ActOutcome::substitute(mode, SubstitutionReason::Malformed(e.to_string())),
                },
                Reply::Failed(reason) => ActOutcome::substitute(mode, reason),
            };
            if let Some(reason) = &outcome.substituted {
                match reason {
                    SubstitutionReason::Timeout => endpoint.stats.timeouts += 1,
                    _ => endpoint.stats.errors += 1,
                }
                warn!("step {step}: agent {i} ({}) substituted with Stop: {reason}", endpoint.label());
            }
            outcomes[i] = Some(outcome);
        }
        outcomes
    }

    /// Starts an episode on every endpoint: in-process behaviors are reset,
    /// remote ones receive `/init`. Remote failures are logged and counted.
    pub fn init_episode(&self, endpoints: &mut [AgentEndpoint], infos: &[EpisodeInfo]) {
        let mut pending = Vec::new();
        for (i, (endpoint, info)) in endpoints.iter_mut().zip(infos).enumerate() {
            match &mut endpoint.kind {
                EndpointKind::InProcess(behavior) => behavior.reset(info),
                EndpointKind::Remote { base_url } => {
                    let body = serde_json::to_string(info).expect("episode info serializes");
                    // Setup calls get a more generous budget than moves.
                    let budget = endpoint.timeout.max(Duration::from_secs(2));
                    pending.push((i, post(&self.net().1, format!("{base_url}/init"), body, budget)));
                }
            }
        }
        self.finish_lifecycle(endpoints, pending, "init");
    }

    pub fn end_episode(&self, endpoints: &mut [AgentEndpoint], result: &MatchResult) {
        let body = serde_json::to_string(result).expect("result serializes");
        let mut pending = Vec::new();
        for (i, endpoint) in endpoints.iter().enumerate() {
            if let EndpointKind::Remote { base_url } = &endpoint.kind {
                let budget = endpoint.timeout.max(Duration::from_secs(2));
                pending.push((i, post(&self.net().1, format!("{base_url}/episode_end"), body.clone(), budget)));
            }
        }
        self.finish_lifecycle(endpoints, pending, "episode_end");
    }

    fn finish_lifecycle<F>(&self, endpoints: &mut [AgentEndpoint], pending: Vec<(usize, F)>, what: &str)
    where
        F: std::future::Future<Output = Reply>,
    {
        if pending.is_empty() {
            return;
        }
        let (ids, futures): (Vec<usize>, Vec<_>) = pending.into_iter().unzip();
        for (i, reply) in ids.into_iter().zip(self.net().0.block_on(join_all(futures))) {
            if let Reply::Failed(reason) = reply {
                endpoints[i].stats.errors += 1;
                warn!("{what} failed for agent {i} ({}): {reason}", endpoints[i].label());
            }
        }
    }
}
