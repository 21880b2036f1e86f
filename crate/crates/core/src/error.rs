use thiserror::Error;

/// Errors raised by the divisive cover pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid arguments: out-of-range indices, parameters outside their domain,
    /// incompatible strategy/metric combinations.
    #[error("usage error: {0}")]
    Usage(String),
    /// The subset has zero diameter and admits no division into proper parts.
    #[error("subset of {0} coincident point(s) cannot be divided")]
    IndivisibleSubset(usize),
    /// Malformed input data.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A construction outgrew its size limit.
    #[error("{what} exceeds the limit of {limit}")]
    Budget { what: &'static str, limit: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
