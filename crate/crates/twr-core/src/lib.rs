//! Thomas–Wigner rotation computed two independent ways.
//!
//! The composition of two non-collinear pure Lorentz boosts is not a pure
//! boost: it carries a spatial rotation. This crate computes that rotation
//!
//! 1. **algebraically**, by composing boost matrices and factoring out the
//!    residual rotation R(v₁, v₂) = L(v₁₂)⁻¹ L(v₂) L(v₁), and
//! 2. **geometrically**, as the holonomy of parallel transport around a
//!    geodesic loop on the mass shell (the hyperboloid of on-shell momenta,
//!    a space of constant curvature −1/m²),
//!
//! and cross-checks that the two agree — including the classic Thomas
//! precession of a circular orbit, α = 2π(γ − 1) per revolution, which
//! appears as the holonomy of the orbit's momentum circle.
//!
//! Everything is generic over the floating-point scalar through the
//! [`Real`] trait (implemented by `f32` and `f64`); the crate root exports
//! `f64` type aliases for the common case.
//!
//! # Module map
//!
//! - [`linalg`]: small fixed-size real/complex matrix kit;
//! - [`lorentz`]: boosts, velocity composition, Wigner rotation, the
//!   SU(2) ↔ SO(3) dictionary;
//! - [`shell`]: intrinsic geometry of the mass shell (chart, metric,
//!   Christoffel symbols, curvature, frames, closed-form geodesics);
//! - [`spin`]: frame and spinor connection/curvature coefficients, the
//!   so(3) ≅ su(2) isomorphism;
//! - [`transport`]: parallel-transport engines (ambient, intrinsic, spinor)
//!   and loop holonomy with a continuity-lifted SU(2) sign;
//! - [`crosscheck`]: algebra-vs-holonomy comparisons, validation campaigns,
//!   Gauss–Bonnet checks;
//! - [`tolerances`]: the numeric tolerances used across the crate, with
//!   rationale.

pub mod crosscheck;
pub mod error;
pub mod linalg;
pub mod lorentz;
mod scalar;
pub mod shell;
pub mod spin;
pub mod tolerances;
pub mod transport;

pub use error::{Error, Result};
pub use scalar::Real;

// Entries of `CMat2` and `Spinor` are `Complex<T>`; re-export the type so
// downstream code can construct them without naming the crate separately.
pub use num_complex::Complex;

pub use linalg::{CMat2, Mat3, Mat4, Spinor, Vec3, Vec4};
pub use lorentz::{
    boost_from_momentum, canonical_angle_axis, eta, minkowski_dot, pure_boost,
    rotation_from_angle_axis, rotation_to_angle_axis, su2_from_angle_axis, su2_to_so3,
    twr_of_two_boosts, velocity_add_collinear, velocity_add_general, velocity_of_momentum,
    wigner_rotation, AngleAxis, FourVector, LorentzMatrix, Rotation3, Velocity3,
};
pub use shell::{ChartPoint, Geodesic, ShellGeometry};
pub use spin::{
    phi_iso, phi_iso_inverse, so3_connection, so3_curvature, spinor_connection, spinor_curvature,
};
pub use transport::{
    circle_holonomy, circle_holonomy_closed_form, default_holonomy_basis, holonomy_of_loop,
    holonomy_of_loop_in_basis, orbit_radius_for_speed, precession_holonomy, spinor_propagator,
    thomas_precession_angle, transport_spinor, transport_vector_ambient,
    transport_vector_intrinsic, triangle_holonomy, HolonomyBasis, HolonomyResult, PathSegment,
    ShellPath, TriangleHolonomy,
};
pub use crosscheck::{
    compare_many, compare_precession, compare_triangle_vs_algebra, gauss_bonnet_triangle,
    linspace, validate_perpendicular_grid, GaussBonnetCheck, PrecessionComparison, TwrComparison,
};

/// `f64` aliases for the main types.
pub type Velocity3f = Velocity3<f64>;
/// See [`Velocity3f`].
pub type FourVectorF = FourVector<f64>;
/// See [`Velocity3f`].
pub type LorentzMatrixF = LorentzMatrix<f64>;
/// See [`Velocity3f`].
pub type Rotation3f = Rotation3<f64>;
/// See [`Velocity3f`].
pub type AngleAxisF = AngleAxis<f64>;
/// See [`Velocity3f`].
pub type ShellGeometryF = ShellGeometry<f64>;
/// See [`Velocity3f`].
pub type ChartPointF = ChartPoint<f64>;
/// See [`Velocity3f`].
pub type ShellPathF = ShellPath<f64>;
/// See [`Velocity3f`].
pub type HolonomyResultF = HolonomyResult<f64>;
