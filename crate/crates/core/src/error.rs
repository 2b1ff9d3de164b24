use thiserror::Error;

/// Errors surfaced by guarded operations. Budget exhaustion is not an error;
/// it is reported as an inconclusive decision.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("pattern has {0} vertices, the supported maximum is {1}")]
    PatternTooLarge(usize, usize),
    #[error("pattern must have at least one vertex")]
    EmptyPattern,
    #[error("{what} of size {got} exceeds the resource guard of {limit}")]
    ResourceGuard {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("set packing target requires (k + t) even, got k={k}, t={t}; pad the universe with an unused element")]
    Parity { k: usize, t: usize },
    #[error("malformed instance: {0}")]
    MalformedInstance(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T> = std::result::Result<T, Error>;
