use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series window exceeded: {0}")]
    WindowExceeded(String),

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("fixed-point iteration failed: {0}")]
    NoConvergence(String),

    #[error("result is not an integer: {0}")]
    NonIntegral(String),

    #[error("routes disagree: {0}")]
    Consistency(String),

    #[error("fixture check failed: {0}")]
    Fixture(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
