//! Centralized numerical tolerances.
//!
//! Every default threshold used by the library and its verification suite is
//! named here, with the context it applies to. Functions that check an
//! invariant at runtime take one of these as a default and usually offer a
//! `*_with_tol` variant for callers that need a different trade-off.
//!
//! All values are absolute tolerances on `f64` quantities unless stated
//! otherwise.

/// Default for runtime invariant assertions (on-shell residues, rotation-block
/// consistency of a boost product, segment joins). Configurable at call sites.
pub const DEFAULT_INVARIANT_TOL: f64 = 1e-9;

/// `max |ΛᵀηΛ − η|` for a freshly constructed pure boost.
pub const ETA_PRESERVATION: f64 = 1e-12;

/// How exactly a momentum-preserving rotation must fix the rest vector.
pub const REST_FIX: f64 = 1e-10;

/// Composition of collinear boosts must be rotation-free to this level.
pub const COLLINEAR_IDENTITY: f64 = 1e-12;

/// SU(2) → SO(3) covering-map checks: homomorphism property and the trace
/// identity `(tr U)² = 1 + tr R`.
pub const SU2_SO3_HOMOMORPHISM: f64 = 1e-12;

/// Velocity composition must match the velocity read off the composed boost.
pub const VELOCITY_COMPOSITION: f64 = 1e-12;

/// Angle-axis → rotation → angle-axis round trips.
pub const ROTATION_ROUNDTRIP: f64 = 1e-12;

/// Antisymmetry required of inputs to the so(3) → su(2) intertwiner.
pub const ANTISYMMETRY: f64 = 1e-12;

/// The spinor connection/curvature must equal the intertwined so(3) forms.
pub const SPINOR_MATCHES_SO3: f64 = 1e-14;

/// Frame/coframe duality `Θᴬ(e_B) = δᴬ_B`.
pub const FRAME_DUALITY: f64 = 1e-14;

/// Frame orthonormality `g(e_A, e_B) = −δ_AB`.
pub const FRAME_ORTHONORMALITY: f64 = 1e-12;

/// Scalar curvature constancy `R ≡ 6/m²` sampled over the shell.
pub const RICCI_CONSTANCY: f64 = 1e-8;

/// Finite-difference pullback of η through the embedding vs. the chart metric.
pub const METRIC_PULLBACK: f64 = 1e-8;

/// Finite-difference checks of the Levi-Civita data (Christoffel symbols,
/// metric compatibility, frame-connection formula, Cartan structure
/// equations).
pub const STRUCTURE_EQUATIONS: f64 = 1e-6;

/// Norm drift of a spinor under path-ordered transport over 10⁴ steps.
pub const SPINOR_NORM_DRIFT: f64 = 1e-13;

/// Drift of `−g(X,X)` under vector transport over 10⁴ steps.
pub const VECTOR_NORM_DRIFT: f64 = 1e-9;

/// Agreement between the ambient and intrinsic transport engines on
/// chart-regular arcs (compared in ambient components).
pub const ENGINE_AGREEMENT: f64 = 1e-7;

/// Triad return defect for a geodesic out-and-back through the rest point.
pub const ORIGIN_RETURN: f64 = 1e-8;

/// Path-ordered circle holonomy vs. the closed-form disk result at 10⁴ steps
/// (compared at the rotation level).
pub const CIRCLE_VS_CLOSED: f64 = 1e-6;

/// Default campaign tolerance: geometric vs. algebraic rotation at 10⁴ steps.
pub const GEOMETRIC_VS_ALGEBRAIC: f64 = 1e-5;

/// Gauss–Bonnet quadrature vs. the transported holonomy angle.
pub const GAUSS_BONNET: f64 = 1e-4;

/// Floor applied to step-doubling discretization estimates before they are
/// used in pass/fail coupling, accounting for accumulated roundoff that the
/// estimator cannot see.
pub const DISCRETIZATION_FLOOR: f64 = 1e-12;

/// Width of the band around angle = π inside which rotation axes are compared
/// with antipodal identification (n and −n describe the same π-rotation).
pub const ANTIPODAL_BAND: f64 = 1e-3;

/// Relative threshold (in units of the mass) below which the radial chart
/// coordinate of a projected momentum is flagged as chart-degenerate.
pub const CHART_DEGENERACY_REL: f64 = 1e-12;
