use thiserror::Error;

/// Errors raised by the series, moment, numeric and arithmetic routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence after {iterations} iterations (achieved bound {achieved:e})")]
    Convergence { iterations: usize, achieved: f64 },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
