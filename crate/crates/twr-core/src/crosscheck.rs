//! Cross-verification between the algebraic route (boost composition) and
//! the geometric route (loop holonomy on the shell), plus curvature-integral
//! consistency checks.
//!
//! Pass rule for a comparison: the angle deviation and axis deviation must
//! each be within the requested tolerance, and the basis-free relative
//! rotation angle must be explained by the measured discretization error —
//! it may not exceed `max(tol, 10 × discretization)`, with the
//! discretization estimate floored at
//! [`tolerances::DISCRETIZATION_FLOOR`] so that pure roundoff can never fail
//! an otherwise-converged comparison.

use crate::error::Result;
use crate::linalg::Vec3;
use crate::lorentz::{
    canonical_angle_axis, minkowski_dot, rotation_from_angle_axis, rotation_to_angle_axis,
    AngleAxis, FourVector, Rotation3, Velocity3,
};
use crate::scalar::{count, half, lit, Real};
use crate::shell::ShellGeometry;
use crate::tolerances;
use crate::transport::{
    holonomy_of_loop_in_basis, orbit_radius_for_speed, precession_holonomy, spinor_propagator,
    thomas_precession_angle, triangle_holonomy, HolonomyBasis, ShellPath,
};
use rayon::prelude::*;
use serde::Serialize;

/// Deviation between two rotations given in angle-axis form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RotationDeviation<T> {
    /// |angle₁ − angle₂| after canonical reduction.
    pub angle: T,
    /// max-norm difference of the unit axes (with the n ↔ −n identification
    /// near angle π, and ignored entirely when either rotation is within
    /// 1e−9 of the identity, where the axis is not defined).
    pub axis: T,
    /// Angle of the relative rotation R₁R₂ᵀ — a single basis-free distance.
    pub relative_angle: T,
}

/// Computes the deviation between two rotations, handling the angle-axis
/// degeneracies (identity: axis arbitrary; angle π: axis sign arbitrary).
pub fn rotation_deviation<T: Real>(a: &AngleAxis<T>, b: &AngleAxis<T>) -> RotationDeviation<T> {
    let ca = canonical_angle_axis(a);
    let cb = canonical_angle_axis(b);
    let angle = (ca.angle - cb.angle).abs();
    let tiny = lit::<T>(1e-9);
    let axis = if ca.angle <= tiny || cb.angle <= tiny {
        T::zero()
    } else {
        let direct = ca.axis.max_abs_diff(&cb.axis);
        let near_pi = (T::PI() - ca.angle).min(T::PI() - cb.angle)
            <= lit(tolerances::ANTIPODAL_BAND);
        if near_pi {
            direct.min(ca.axis.max_abs_diff(&-cb.axis))
        } else {
            direct
        }
    };
    let ra = rotation_from_angle_axis(&ca);
    let rb = rotation_from_angle_axis(&cb);
    RotationDeviation {
        angle,
        axis,
        relative_angle: ra.angle_between(&rb),
    }
}

/// One algebraic-vs-geometric comparison of the Thomas–Wigner rotation for a
/// boost pair.
#[derive(Debug, Clone, Serialize)]
pub struct TwrComparison<T> {
    pub v1: Vec3<T>,
    pub v2: Vec3<T>,
    /// Angle-axis of L(v₁₂)⁻¹L(v₂)L(v₁) (boost composition).
    pub algebraic: AngleAxis<T>,
    /// Angle-axis of the geodesic-triangle holonomy (rest-Cartesian basis).
    pub geometric: AngleAxis<T>,
    pub angle_deviation: T,
    pub axis_deviation: T,
    pub relative_angle: T,
    /// Step-doubling discretization estimate of the holonomy, floored.
    pub discretization: T,
    pub tolerance: f64,
    pub degenerate: bool,
    pub passed: bool,
}

fn passes<T: Real>(dev: &RotationDeviation<T>, disc: T, tol: f64) -> bool {
    let tol_t = lit::<T>(tol);
    dev.angle <= tol_t
        && dev.axis <= tol_t
        && dev.relative_angle <= tol_t.max(lit::<T>(10.0) * disc)
}

/// Computes the Thomas–Wigner rotation both ways for one boost pair and
/// compares. `steps` is the per-side step count of the triangle loop.
pub fn compare_triangle_vs_algebra<T: Real>(
    geom: &ShellGeometry<T>,
    v1: &Velocity3<T>,
    v2: &Velocity3<T>,
    steps: usize,
    tol: f64,
) -> Result<TwrComparison<T>> {
    let algebraic =
        canonical_angle_axis(&rotation_to_angle_axis(&crate::lorentz::twr_of_two_boosts(
            v1, v2,
        )?)?);
    let tri = triangle_holonomy(geom, v1, v2, steps)?;
    let geometric = tri.holonomy.angle_axis;
    let dev = rotation_deviation(&algebraic, &geometric);
    let disc = tri
        .holonomy
        .convergence
        .max(lit(tolerances::DISCRETIZATION_FLOOR));
    Ok(TwrComparison {
        v1: v1.components(),
        v2: v2.components(),
        algebraic,
        geometric,
        angle_deviation: dev.angle,
        axis_deviation: dev.axis,
        relative_angle: dev.relative_angle,
        discretization: disc,
        tolerance: tol,
        degenerate: tri.degenerate,
        passed: passes(&dev, disc, tol),
    })
}

/// Runs [`compare_triangle_vs_algebra`] over many pairs in parallel,
/// preserving input order.
pub fn compare_many<T: Real>(
    geom: &ShellGeometry<T>,
    pairs: &[(Velocity3<T>, Velocity3<T>)],
    steps: usize,
    tol: f64,
) -> Result<Vec<TwrComparison<T>>> {
    pairs
        .par_iter()
        .map(|(v1, v2)| compare_triangle_vs_algebra(geom, v1, v2, steps, tol))
        .collect()
}

/// Evenly spaced values from `min` to `max` inclusive (`count ≥ 1`; a single
/// point sits at `min`).
pub fn linspace<T: Real>(min: T, max: T, n: usize) -> Vec<T> {
    if n <= 1 {
        return vec![min];
    }
    (0..n)
        .map(|k| min + (max - min) * count::<T>(k) / count::<T>(n - 1))
        .collect()
}

/// The perpendicular-boost campaign: for every pair of speeds (s₁, s₂) in
/// the grid, compares the rotation of v₁ = s₁x̂ followed by v₂ = s₂ŷ.
/// Pairs are ordered row-major in (s₁, s₂).
pub fn validate_perpendicular_grid<T: Real>(
    geom: &ShellGeometry<T>,
    speeds: &[T],
    steps: usize,
    tol: f64,
) -> Result<Vec<TwrComparison<T>>> {
    let mut pairs = Vec::with_capacity(speeds.len() * speeds.len());
    for &s1 in speeds {
        for &s2 in speeds {
            pairs.push((
                Velocity3::from_components(s1, T::zero(), T::zero())?,
                Velocity3::from_components(T::zero(), s2, T::zero())?,
            ));
        }
    }
    compare_many(geom, &pairs, steps, tol)
}

/// Analytic-vs-holonomy comparison of the Thomas precession for one orbit
/// speed.
#[derive(Debug, Clone, Serialize)]
pub struct PrecessionComparison<T> {
    pub speed: T,
    pub gamma: T,
    /// Unwrapped analytic precession per orbit, α = 2π(γ − 1).
    pub analytic_angle: T,
    /// The analytic rotation in canonical form (angle wrapped to [0, π],
    /// axis e₂ of the orthonormal frame, possibly flipped by the reduction).
    pub analytic: AngleAxis<T>,
    /// Measured holonomy of the momentum circle, canonical form, frame basis.
    pub holonomy: AngleAxis<T>,
    pub angle_deviation: T,
    pub axis_deviation: T,
    pub relative_angle: T,
    pub discretization: T,
    pub tolerance: f64,
    /// True when the orbit radius is numerically zero and the holonomy is
    /// the identity by convention.
    pub degenerate: bool,
    pub passed: bool,
}

/// Compares α = 2π(γ − 1) against the measured circle holonomy at the orbit
/// radius ρ = mγv.
pub fn compare_precession<T: Real>(
    geom: &ShellGeometry<T>,
    speed: T,
    steps: usize,
    tol: f64,
) -> Result<PrecessionComparison<T>> {
    let alpha = thomas_precession_angle(speed)?;
    let gamma = (T::one() - speed * speed).sqrt().recip();
    let analytic = canonical_angle_axis(&AngleAxis {
        angle: alpha,
        axis: Vec3::basis(1),
    });
    let rho = orbit_radius_for_speed(geom, speed)?;
    let degenerate = rho <= lit::<T>(1e-6) * geom.mass();
    let (holonomy, disc) = if degenerate {
        (
            AngleAxis {
                angle: T::zero(),
                axis: Vec3::basis(2),
            },
            T::zero(),
        )
    } else {
        let hol = precession_holonomy(geom, speed, steps)?;
        (hol.angle_axis, hol.convergence)
    };
    let dev = rotation_deviation(&analytic, &holonomy);
    let disc = disc.max(lit(tolerances::DISCRETIZATION_FLOOR));
    Ok(PrecessionComparison {
        speed,
        gamma,
        analytic_angle: alpha,
        analytic,
        holonomy,
        angle_deviation: dev.angle,
        axis_deviation: dev.axis,
        relative_angle: dev.relative_angle,
        discretization: disc,
        tolerance: tol,
        degenerate,
        passed: passes(&dev, disc, tol),
    })
}

/// Gauss–Bonnet consistency of a triangle loop: holonomy angle vs the
/// curvature integral |K| × Area = Area/m² over the enclosed region.
#[derive(Debug, Clone, Serialize)]
pub struct GaussBonnetCheck<T> {
    pub holonomy_angle: T,
    /// Area/m² by two-dimensional midpoint quadrature over the geodesic cone.
    pub curvature_integral: T,
    /// Area/m² by the hyperbolic angle-defect formula (π − Σ interior).
    pub angle_defect: T,
    pub deviation: T,
    pub tolerance: f64,
    pub passed: bool,
}

/// Interior angle of the triangle at vertex `v` between the geodesics
/// towards `p` and `q` (Riemannian angle of the initial velocities).
fn interior_angle<T: Real>(
    geom: &ShellGeometry<T>,
    v: &FourVector<T>,
    p: &FourVector<T>,
    q: &FourVector<T>,
) -> Result<T> {
    let gu = geom.geodesic(v, p)?;
    let gw = geom.geodesic(v, q)?;
    let u = gu.velocity(T::zero());
    let w = gw.velocity(T::zero());
    let uu = -minkowski_dot(&u, &u);
    let ww = -minkowski_dot(&w, &w);
    let uw = -minkowski_dot(&u, &w);
    Ok((uw / (uu * ww).sqrt()).min(T::one()).max(-T::one()).acos())
}

/// Area of the geodesic triangle divided by m², via the hyperbolic
/// angle-defect formula (exact up to the angle computations).
pub fn triangle_area_angle_defect<T: Real>(
    geom: &ShellGeometry<T>,
    vertices: &[FourVector<T>; 3],
) -> Result<T> {
    let [a, b, c] = vertices;
    let sum = interior_angle(geom, a, b, c)?
        + interior_angle(geom, b, c, a)?
        + interior_angle(geom, c, a, b)?;
    Ok(T::PI() - sum)
}

/// Area of the geodesic triangle divided by m², by n×n midpoint quadrature
/// over the cone parametrization P(s, t) = geodesic(A → γ_BC(s))(t). The
/// s-derivative is taken by central finite differences.
pub fn triangle_area_quadrature<T: Real>(
    geom: &ShellGeometry<T>,
    vertices: &[FourVector<T>; 3],
    n: usize,
) -> Result<T> {
    let [a, b, c] = vertices;
    let base = geom.geodesic(b, c)?;
    let m2 = geom.mass() * geom.mass();
    let h = lit::<T>(1e-5);
    let nn = count::<T>(n);
    let mut area = T::zero();
    for i in 0..n {
        let s = (count::<T>(i) + half::<T>()) / nn;
        let spoke = geom.geodesic(a, &base.point(s))?;
        let spoke_m = geom.geodesic(a, &base.point(s - h))?;
        let spoke_p = geom.geodesic(a, &base.point(s + h))?;
        for j in 0..n {
            let t = (count::<T>(j) + half::<T>()) / nn;
            let dt = spoke.velocity(t);
            let ds = (spoke_p.point(t) - spoke_m.point(t)).scale((h + h).recip());
            let g_tt = -minkowski_dot(&dt, &dt);
            let g_ss = -minkowski_dot(&ds, &ds);
            let g_st = -minkowski_dot(&ds, &dt);
            let det = (g_ss * g_tt - g_st * g_st).max(T::zero());
            area = area + det.sqrt();
        }
    }
    Ok(area / (nn * nn) / m2)
}

/// Runs the Gauss–Bonnet check on the triangle loop of a boost pair:
/// the measured holonomy angle must match the curvature integral within
/// `tol`.
pub fn gauss_bonnet_triangle<T: Real>(
    geom: &ShellGeometry<T>,
    v1: &Velocity3<T>,
    v2: &Velocity3<T>,
    steps: usize,
    quad_points: usize,
    tol: f64,
) -> Result<GaussBonnetCheck<T>> {
    let tri = triangle_holonomy(geom, v1, v2, steps)?;
    let (integral, defect) = if tri.degenerate {
        (T::zero(), T::zero())
    } else {
        (
            triangle_area_quadrature(geom, &tri.vertices, quad_points)?,
            triangle_area_angle_defect(geom, &tri.vertices)?,
        )
    };
    let angle = tri.holonomy.angle_axis.angle;
    let deviation = (angle - integral).abs();
    Ok(GaussBonnetCheck {
        holonomy_angle: angle,
        curvature_integral: integral,
        angle_defect: defect,
        deviation,
        tolerance: tol,
        passed: deviation <= lit(tol),
    })
}

/// Deviation between the spinor engine and the vector engine on a closed
/// chart-regular loop: max-norm difference between the SO(3) image of the
/// path-ordered SU(2) product and the frame-basis holonomy of the ambient
/// engine.
pub fn spinor_vs_vector_deviation<T: Real>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
) -> Result<T> {
    let u = spinor_propagator(geom, path)?;
    let r_spinor: Rotation3<T> = crate::lorentz::su2_to_so3(&u);
    let hol = holonomy_of_loop_in_basis(geom, path, HolonomyBasis::OrthonormalFrame)?;
    Ok(r_spinor.0.max_abs_diff(&hol.so3.0))
}
