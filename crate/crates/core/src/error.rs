use thiserror::Error;

/// Errors produced by the spectral-density, transform, reduction and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid spectral density specification: {0}")]
    InvalidSpec(String),

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("degenerate spectral density: first moment {moment:e} is below the floor")]
    DegenerateSD { moment: f64 },

    #[error("J(w)/w grows without bound toward w = 0 (ratio {ratio:.3} over the first grid spacing)")]
    DivergentMoment { ratio: f64 },

    #[error("complex frequency {re} + {im}i is not in the upper half plane")]
    DomainError { re: f64, im: f64 },

    #[error("boundary transform vanishes inside a spectral gap at w = {frequency}")]
    GapPole { frequency: f64 },

    #[error("residual spectral density went negative ({min_value:e}) at w = {frequency}")]
    NumericalBreakdown { frequency: f64, min_value: f64 },

    #[error("Lanczos residual norm underflowed at step {step}")]
    Breakdown { step: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
