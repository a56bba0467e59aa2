//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument does not hold.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}, field `{field}`: {message}")]
    Parse {
        line: u64,
        field: String,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("frequency {frequency_hz} Hz outside the validity band [{lo_hz}, {hi_hz}] Hz")]
    OutOfBand {
        frequency_hz: f64,
        lo_hz: f64,
        hi_hz: f64,
    },

    /// A computation produced NaN or infinity.
    #[error("non-finite result: {0}")]
    NonFinite(String),

    #[error("matrix is rank deficient (smallest singular value {smallest_singular_value:e})")]
    RankDeficient { smallest_singular_value: f64 },

    #[error("ill-conditioned problem (condition number {condition:e}); {hint}")]
    IllConditioned { condition: f64, hint: String },

    #[error("{count} candidates exceed the limit of {limit}")]
    TooManyCandidates { count: u128, limit: u128 },

    #[error("{0} did not converge")]
    NoConvergence(String),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// Returns `Err(NonFinite)` unless `x` is finite.
pub(crate) fn finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(format!("{what} = {x}")))
    }
}
