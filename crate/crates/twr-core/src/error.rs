//! Typed errors for domain violations and consistency failures.
//!
//! Diagnostic payloads are carried as `f64` regardless of the scalar type so
//! that the error type stays non-generic.

use thiserror::Error;

/// Library error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A velocity with speed `>= 1` (the speed of light is 1).
    #[error("superluminal speed {speed} (speeds must lie below 1)")]
    Superluminal { speed: f64 },

    /// A four-vector that should satisfy `η(p,p) = m²` does not.
    #[error("four-vector is off shell: η(p,p) = {invariant}, expected m² = {mass_squared}")]
    OffShell { invariant: f64, mass_squared: f64 },

    /// A four-momentum with non-positive energy component.
    #[error("four-vector is not future-timelike: p⁰ = {time_component}")]
    NotFutureTimelike { time_component: f64 },

    /// Mass must be strictly positive.
    #[error("mass {mass} is not strictly positive")]
    NonPositiveMass { mass: f64 },

    /// Radial chart coordinate must be non-negative.
    #[error("radial coordinate ρ = {rho} is negative")]
    NegativeRho { rho: f64 },

    /// A coordinate or component that must be finite is NaN or infinite.
    #[error("non-finite value {value} where a finite number is required")]
    NonFinite { value: f64 },

    /// Operation evaluated at a chart-singular locus (ρ = 0 or sin θ = 0).
    #[error("chart-singular point: ρ = {rho}, θ = {theta}")]
    ChartSingular { rho: f64, theta: f64 },

    /// A matrix expected to be a rotation (or to have a clean rotation block)
    /// failed the consistency check.
    #[error("matrix is not a rotation within tolerance: defect {defect}")]
    NotARotation { defect: f64 },

    /// A matrix expected to be antisymmetric is not.
    #[error("matrix is not antisymmetric within tolerance: defect {defect}")]
    NotAntisymmetric { defect: f64 },

    /// A vector that must be tangent to the mass shell at its base point
    /// (η(X, p) = 0) is not.
    #[error("vector is not tangent to the shell: η(X,p) = {pairing}")]
    NotTangent { pairing: f64 },

    /// A path that must close (or whose segments must join) has a gap.
    #[error("path does not close/join: endpoint gap {gap}")]
    OpenPath { gap: f64 },

    /// A path with no segments.
    #[error("path has no segments")]
    EmptyPath,

    /// A segment or integration with zero steps / too few sample points.
    #[error("at least {required} integration nodes are required, got {got}")]
    TooFewSteps { required: usize, got: usize },
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
