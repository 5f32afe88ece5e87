//! Exact microcanonical density of states for nondegenerate quantum spectra.
//!
//! Under the postulate that every unit-norm pure state with the same energy
//! expectation ⟨H⟩ = E is equally probable, an (n+1)-level system has a
//! closed-form density of states μ(E). This crate evaluates it exactly in
//! big-rational arithmetic, verifies its normalization and symmetry
//! identities with zero tolerance, follows the alternating sum ω_J(α)
//! deep into its catastrophic-cancellation regime, measures the large-J
//! decay against a steepest-descent solver, reproduces the α = 2 growth
//! constant 2√3/√π by Richardson extrapolation, and cross-checks everything
//! with a seeded Monte Carlo pure-state sampler.
//!
//! Modules:
//! - [`spectral`]: μ(E) for general and linear spectra, piecewise-exact
//!   polynomials, exact integration, the alternating binomial identity.
//! - [`asymptotics`]: ω_J(α) series tables, cancellation diagnostics,
//!   decay-rate measurement, Richardson extrapolation.
//! - [`saddle`]: the phase function f, prefactor g, saddle solver and
//!   asymptotic predictions.
//! - [`mc`]: reproducible pure-state sampling, histograms and comparison
//!   against the exact density.
//! - [`exact`]: big-rational helpers and float/decimal projections.

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod mc;
pub mod saddle;
pub mod spectral;

pub use asymptotics::{AlphaParam, SeriesRow, SeriesTable};
pub use error::{Error, Result};
pub use mc::{DensityComparison, EmpiricalDensity, PureStateSample, SplitMix64};
pub use saddle::{ParametricPair, SaddleResult};
pub use spectral::{PiecewisePolynomial, Spectrum};
