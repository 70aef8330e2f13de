use thiserror::Error;

/// Errors raised by the lattice, kernel, Monte Carlo and PDE engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("negative initial density {value} at x = {x}")]
    NegativeDensity { x: f64, value: f64 },

    #[error("query ({t}, {y}) outside the trajectory box")]
    OutOfRange { t: f64, y: f64 },

    #[error("trajectory too short: need {needed} raw states, have {have}")]
    TrajectoryTooShort { needed: usize, have: usize },

    #[error("support has {cells} cells, at least {needed} required")]
    SupportTooSmall { cells: usize, needed: usize },

    #[error(
        "quadrature did not converge on [{lo}, {hi}]: estimated error {achieved:e} \
         exceeds tolerance {requested:e} after {splits} splits"
    )]
    QuadratureNonConvergence {
        lo: f64,
        hi: f64,
        achieved: f64,
        requested: f64,
        splits: usize,
    },

    #[error("one-sided value at the interface needs an explicit side")]
    MissingSide,

    #[error("time step {k} violates the stability bound; largest admissible step is {k_max}")]
    Cfl { k: f64, k_max: f64 },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
