use thiserror::Error;

/// Errors raised by the numerical modules and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("theta = 1 is the wave case and is not supported")]
    WaveCase,

    #[error("multiplier is not finite at j = {j}, lambda = {lambda}")]
    NonFinite { j: i32, lambda: f64 },

    #[error("unresolved: {what} is {value:.6e} but the grid resolves at most {limit:.6e}")]
    Resolution {
        what: String,
        value: f64,
        limit: f64,
    },

    #[error("aliasing: support radius {support} exceeds half the grid extent {half_extent}")]
    Aliasing { support: f64, half_extent: f64 },

    #[error("grid: {0}")]
    Grid(String),

    #[error("Laguerre truncation needs about K_max = {suggested} terms (cap {cap})")]
    Truncation { suggested: usize, cap: usize },

    #[error("out of regime: {0}")]
    OutOfRegime(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
