use std::io;

use thiserror::Error;

/// Errors raised by the numerical pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input structure (piece lists, tables, series).
    #[error("structural error: {0}")]
    Structural(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Missing or invalid configuration.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("root isolation failed: {0}")]
    RootIsolation(String),

    #[error("quadrature did not converge: achieved error estimate {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("bracket error: {0}")]
    Bracket(String),

    /// A caller-supplied oracle broke its contract.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("cache format error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// True for errors caused by bad inputs rather than internal failures.
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::Structural(_)
                | Error::Precondition(_)
                | Error::Config(_)
                | Error::Parse { .. }
                | Error::Bracket(_)
                | Error::Contract(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
