//! Error types shared across the crate.

use thiserror::Error;

/// Errors reported by the exact-arithmetic and numeric routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A spectrum with repeated eigenvalues was supplied where the
    /// density-of-states formula requires distinct levels.
    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument violates a structural precondition (bad grid, bad flag,
    /// non-integer level count, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Not enough data points to run the requested estimator.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The data are formally sufficient but numerically unusable
    /// (e.g. a zero value where a logarithm is needed).
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// The root bracket contains no sign change, or refinement failed to
    /// reach the required residual.
    #[error("solver failure: no root in bracket [{lo}, {hi}] (f'={f_lo:.3e} .. {f_hi:.3e})")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// The solver converged geometrically but the residual target was missed.
    #[error(
        "solver failure: residual {residual:.3e} above target {target:.3e} at lambda={lambda}"
    )]
    ResidualTooLarge {
        lambda: f64,
        residual: f64,
        target: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
