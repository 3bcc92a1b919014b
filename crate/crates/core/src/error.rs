use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("board size {0} must be odd and within [5, 63]")]
    BoardSize(usize),
    #[error("invalid {field}: {reason}")]
    Invalid { field: &'static str, reason: &'static str },
    #[error("{requested} wall cells requested but only {available} are placeable")]
    TooManyWalls { requested: usize, available: usize },
}

impl ConfigError {
    pub(crate) fn invalid(field: &'static str, reason: &'static str) -> Self {
        ConfigError::Invalid { field, reason }
    }
}

/// Contract violations raised by the transition function.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("expected 4 inputs, got {0}")]
    InputArity(usize),
    #[error("game already finished at step {0}")]
    GameOver(u32),
    #[error("agent {agent} sent message word {word} outside [1, {max}]")]
    MessageWord { agent: usize, word: u8, max: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("no board with connected corners found after {attempts} attempts")]
    Disconnected { attempts: u32 },
}

/// Observation or response decoding failure, naming the offending field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WireError {
    #[error("malformed body: {0}")]
    Syntax(String),
    #[error("field `{field}`: {reason}")]
    Field { field: &'static str, reason: String },
}

impl WireError {
    pub(crate) fn field(field: &'static str, reason: impl Into<String>) -> Self {
        WireError::Field { field, reason: reason.into() }
    }

    pub fn field_name(&self) -> Option<&'static str> {
        match self {
            WireError::Field { field, .. } => Some(field),
            WireError::Syntax(_) => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("replay format version {found} is not supported (expected {expected})")]
    Version { found: u32, expected: u32 },
    #[error("replay format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Gen(#[from] GenError),
}

#[derive(Debug, Error)]
pub enum RunnerError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error("unknown agent `{0}` (expected a registered name or an http:// url)")]
    UnknownAgent(String),
    #[error("agent setup failed: {0}")]
    Setup(String),
    #[error("episode ended without a result after {0} steps")]
    NoResult(u32),
}
