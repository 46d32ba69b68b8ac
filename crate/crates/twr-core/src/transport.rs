//! Parallel transport along shell curves and loop holonomy.
//!
//! Three independent engines integrate the same connection:
//!
//! - **ambient**: transports tangent four-vectors by the extrinsic equation
//!   Ẋ = −(η(X, ṗ)/m²) p (RK4 with tangency re-projection each step). No
//!   chart is involved, so it works through coordinate singularities and is
//!   the engine behind [`holonomy_of_loop`];
//! - **intrinsic**: transports chart components by
//!   dXⁱ/dt = −Γⁱ_{jk} żʲ Xᵏ (RK4), valid where the chart is regular;
//! - **spinor**: accumulates the path-ordered SU(2) product of
//!   exp(−ω^s_i(z_mid) Δzⁱ) over consecutive samples, with the connection
//!   evaluated at the projected chord midpoint (second-order accurate).
//!
//! Loop holonomy is reported as an SO(3) matrix in a declared basis, plus an
//! SU(2) lift whose sign is fixed by continuity along the loop: the rotation-
//! so-far is tracked at checkpoints, converted to a quaternion, and kept on
//! the same sheet of the double cover by sign alignment. A full great-circle
//! sweep therefore lands on −I ⋅ (naive lift) when the frame winds, exactly
//! as the path-ordered spinor product does.

use crate::error::{Error, Result};
use crate::linalg::{CMat2, Mat3, Vec3, Vec4};
use crate::lorentz::{
    boost_from_momentum, canonical_angle_axis, minkowski_dot, pure_boost, quaternion_from_rotation,
    rotation_to_angle_axis, su2_from_quaternion, su2_to_so3, AngleAxis, FourVector, Rotation3,
    Velocity3,
};
use crate::scalar::{count, diag, half, join_tol, lit, rotation_gate_tol, two, wrap_to_pi, Real};
use crate::shell::{ChartPoint, Geodesic, ShellGeometry};
use crate::spin::{spinor_connection, su2_exp, su2_from_coefficients};
use crate::linalg::Spinor;
use serde::{Deserialize, Serialize};

/// Step-doubling denominators: comparing a run at n steps with one at n/2
/// overestimates the n-step error by (2^order − 1).
const AMBIENT_ORDER_FACTOR: f64 = 15.0; // RK4, order 4
/// Threshold below which the chart (and with it the intrinsic and spinor
/// engines) is treated as unusable: ρ/m or |sinθ| smaller than this.
const CHART_COMFORT: f64 = 1e-6;

/// One smooth piece of a shell path.
#[derive(Debug, Clone)]
pub enum PathSegment<T> {
    /// Parallel-circle arc at fixed (ρ, θ), φ sweeping start → end (radians,
    /// not wrapped: a full circle is `phi_end = phi_start + 2π`).
    Circle {
        rho: T,
        theta: T,
        phi_start: T,
        phi_end: T,
    },
    /// Closed-form shell geodesic between two on-shell momenta.
    Geodesic(Geodesic<T>),
}

impl<T: Real> PathSegment<T> {
    /// The point at segment parameter `t ∈ [0, 1]`.
    pub fn point(&self, geom: &ShellGeometry<T>, t: T) -> FourVector<T> {
        match self {
            PathSegment::Circle {
                rho,
                theta,
                phi_start,
                phi_end,
            } => {
                let phi = *phi_start + t * (*phi_end - *phi_start);
                let (st, ct) = (theta.sin(), theta.cos());
                Vec4::new(
                    geom.energy(*rho),
                    *rho * st * phi.cos(),
                    *rho * st * phi.sin(),
                    *rho * ct,
                )
            }
            PathSegment::Geodesic(g) => g.point(t),
        }
    }

    /// The velocity dp/dt at segment parameter `t`.
    pub fn velocity(&self, geom: &ShellGeometry<T>, t: T) -> FourVector<T> {
        match self {
            PathSegment::Circle {
                rho,
                theta,
                phi_start,
                phi_end,
            } => {
                let span = *phi_end - *phi_start;
                let phi = *phi_start + t * span;
                let st = theta.sin();
                let _ = geom;
                Vec4::new(
                    T::zero(),
                    -*rho * st * phi.sin() * span,
                    *rho * st * phi.cos() * span,
                    T::zero(),
                )
            }
            PathSegment::Geodesic(g) => g.velocity(t),
        }
    }

    pub fn start(&self, geom: &ShellGeometry<T>) -> FourVector<T> {
        self.point(geom, T::zero())
    }

    pub fn end(&self, geom: &ShellGeometry<T>) -> FourVector<T> {
        self.point(geom, T::one())
    }

    /// Chart point and chart velocity żⁱ at parameter `t` (used by the
    /// intrinsic engine; requires chart regularity along the segment).
    fn chart_state(&self, geom: &ShellGeometry<T>, t: T) -> (ChartPoint<T>, Vec3<T>) {
        match self {
            PathSegment::Circle {
                rho,
                theta,
                phi_start,
                phi_end,
            } => {
                let span = *phi_end - *phi_start;
                (
                    ChartPoint {
                        rho: *rho,
                        theta: *theta,
                        phi: *phi_start + t * span,
                    },
                    Vec3([T::zero(), T::zero(), span]),
                )
            }
            PathSegment::Geodesic(g) => {
                let p = g.point(t);
                let v = g.velocity(t);
                (geom.chart_of_raw(&p), chart_velocity(&p, &v))
            }
        }
    }

    /// True when the chart stays comfortably regular along the segment
    /// (sampled at 65 points for geodesics; circles are checked exactly).
    fn chart_regular(&self, geom: &ShellGeometry<T>) -> bool {
        match self {
            PathSegment::Circle { rho, theta, .. } => {
                *rho > lit::<T>(CHART_COMFORT) * geom.mass()
                    && theta.sin().abs() > lit(CHART_COMFORT)
            }
            PathSegment::Geodesic(g) => {
                let n = 64;
                (0..=n).all(|k| {
                    let t = count::<T>(k) / count::<T>(n);
                    let z = geom.chart_of_raw(&g.point(t));
                    z.rho > lit::<T>(CHART_COMFORT) * geom.mass()
                        && z.theta.sin().abs() > lit(CHART_COMFORT)
                })
            }
        }
    }
}

/// Chart velocity żⁱ of a shell curve from its ambient point and velocity.
/// Requires the point to be chart-regular.
fn chart_velocity<T: Real>(p: &FourVector<T>, pdot: &FourVector<T>) -> Vec3<T> {
    let sp = p.spatial();
    let sv = pdot.spatial();
    let rho = sp.norm();
    let rho_dot = sp.dot(&sv) / rho;
    let h = p.0[1].hypot(p.0[2]);
    let h_dot = (p.0[1] * pdot.0[1] + p.0[2] * pdot.0[2]) / h;
    let theta_dot = (h_dot * p.0[3] - h * pdot.0[3]) / (rho * rho);
    let phi_dot = (p.0[1] * pdot.0[2] - p.0[2] * pdot.0[1]) / (h * h);
    Vec3([rho_dot, theta_dot, phi_dot])
}

/// A piecewise-smooth path on the shell: segments with per-segment step
/// counts, validated for continuity at the joints.
#[derive(Debug, Clone)]
pub struct ShellPath<T> {
    parts: Vec<(PathSegment<T>, usize)>,
}

impl<T: Real> ShellPath<T> {
    /// Validates segment data, step counts (≥ 2 each), and continuity of
    /// consecutive segments.
    pub fn new(geom: &ShellGeometry<T>, parts: Vec<(PathSegment<T>, usize)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyPath);
        }
        for (seg, steps) in &parts {
            if *steps < 2 {
                return Err(Error::TooFewSteps {
                    required: 2,
                    got: *steps,
                });
            }
            match seg {
                PathSegment::Circle {
                    rho,
                    theta,
                    phi_start,
                    phi_end,
                } => {
                    for v in [*rho, *theta, *phi_start, *phi_end] {
                        if !v.is_finite() {
                            return Err(Error::NonFinite { value: diag(v) });
                        }
                    }
                    if *rho < T::zero() {
                        return Err(Error::NegativeRho { rho: diag(*rho) });
                    }
                    if *rho <= lit::<T>(CHART_COMFORT) * geom.mass()
                        || theta.sin().abs() <= lit(CHART_COMFORT)
                    {
                        return Err(Error::ChartSingular {
                            rho: diag(*rho),
                            theta: diag(*theta),
                        });
                    }
                }
                PathSegment::Geodesic(g) => {
                    crate::lorentz::check_on_shell(
                        &g.start(),
                        geom.mass(),
                        crate::tolerances::DEFAULT_INVARIANT_TOL,
                    )?;
                    crate::lorentz::check_on_shell(
                        &g.end(),
                        geom.mass(),
                        crate::tolerances::DEFAULT_INVARIANT_TOL,
                    )?;
                }
            }
        }
        for w in parts.windows(2) {
            let gap = (w[0].0.end(geom) - w[1].0.start(geom)).max_abs();
            let scale = T::one() + w[0].0.end(geom).time().abs();
            if gap > join_tol::<T>() * scale {
                return Err(Error::OpenPath { gap: diag(gap) });
            }
        }
        Ok(ShellPath { parts })
    }

    /// Full parallel circle at (ρ, θ), φ: 0 → 2π.
    pub fn circle(geom: &ShellGeometry<T>, rho: T, theta: T, steps: usize) -> Result<Self> {
        Self::new(
            geom,
            vec![(
                PathSegment::Circle {
                    rho,
                    theta,
                    phi_start: T::zero(),
                    phi_end: T::PI() + T::PI(),
                },
                steps,
            )],
        )
    }

    /// Geodesic triangle a → b → c → a with a common per-side step count.
    pub fn triangle(
        geom: &ShellGeometry<T>,
        vertices: [FourVector<T>; 3],
        steps_per_side: usize,
    ) -> Result<Self> {
        let [a, b, c] = vertices;
        let sides = vec![
            (PathSegment::Geodesic(geom.geodesic(&a, &b)?), steps_per_side),
            (PathSegment::Geodesic(geom.geodesic(&b, &c)?), steps_per_side),
            (PathSegment::Geodesic(geom.geodesic(&c, &a)?), steps_per_side),
        ];
        Self::new(geom, sides)
    }

    pub fn parts(&self) -> &[(PathSegment<T>, usize)] {
        &self.parts
    }

    pub fn start_point(&self, geom: &ShellGeometry<T>) -> FourVector<T> {
        self.parts[0].0.start(geom)
    }

    pub fn end_point(&self, geom: &ShellGeometry<T>) -> FourVector<T> {
        self.parts.last().unwrap().0.end(geom)
    }

    pub fn total_steps(&self) -> usize {
        self.parts.iter().map(|(_, n)| n).sum()
    }

    /// Distance between the endpoints (zero for a closed loop).
    pub fn closure_gap(&self, geom: &ShellGeometry<T>) -> T {
        (self.end_point(geom) - self.start_point(geom)).max_abs()
    }

    pub fn is_closed(&self, geom: &ShellGeometry<T>) -> bool {
        let scale = T::one() + self.start_point(geom).time().abs();
        self.closure_gap(geom) <= join_tol::<T>() * scale
    }

    fn require_closed(&self, geom: &ShellGeometry<T>) -> Result<()> {
        if self.is_closed(geom) {
            Ok(())
        } else {
            Err(Error::OpenPath {
                gap: diag(self.closure_gap(geom)),
            })
        }
    }

    /// The same path with every step count halved (for step-doubling error
    /// estimates).
    fn halved(&self) -> Self {
        ShellPath {
            parts: self
                .parts
                .iter()
                .map(|(seg, n)| (seg.clone(), (*n / 2).max(2)))
                .collect(),
        }
    }

    /// True when the chart stays comfortably regular along every segment.
    pub fn chart_regular(&self, geom: &ShellGeometry<T>) -> bool {
        self.parts.iter().all(|(seg, _)| seg.chart_regular(geom))
    }

    fn require_chart_regular(&self, geom: &ShellGeometry<T>) -> Result<()> {
        for (seg, _) in &self.parts {
            if !seg.chart_regular(geom) {
                let z = geom.chart_of_raw(&seg.start(geom));
                return Err(Error::ChartSingular {
                    rho: diag(z.rho),
                    theta: diag(z.theta),
                });
            }
        }
        Ok(())
    }
}

/// Shared RK4 driver for the ambient engine: integrates every vector in
/// `xs` along the path, re-projecting onto the tangent space after each
/// step, and invokes `hook(global_step_index, point, xs)` at the start
/// (index 0) and after every step.
fn ambient_transport_multi<T: Real, const K: usize>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
    xs: &mut [FourVector<T>; K],
    hook: &mut dyn FnMut(usize, &FourVector<T>, &[FourVector<T>; K]) -> Result<()>,
) -> Result<()> {
    let m2 = geom.mass() * geom.mass();
    let deriv = |p: &FourVector<T>, v: &FourVector<T>, x: &FourVector<T>| -> FourVector<T> {
        p.scale(-minkowski_dot(x, v) / m2)
    };
    let mut idx = 0usize;
    hook(idx, &path.start_point(geom), xs)?;
    for (seg, steps) in path.parts() {
        let n = *steps;
        let nn = count::<T>(n);
        let h = nn.recip();
        for k in 0..n {
            let t0 = count::<T>(k) / nn;
            let tm = (count::<T>(k) + half::<T>()) / nn;
            let t1 = count::<T>(k + 1) / nn;
            let (p0, v0) = (seg.point(geom, t0), seg.velocity(geom, t0));
            let (pm, vm) = (seg.point(geom, tm), seg.velocity(geom, tm));
            let (p1, v1) = (seg.point(geom, t1), seg.velocity(geom, t1));
            for x in xs.iter_mut() {
                let k1 = deriv(&p0, &v0, x);
                let k2 = deriv(&pm, &vm, &(*x + k1.scale(h * half::<T>())));
                let k3 = deriv(&pm, &vm, &(*x + k2.scale(h * half::<T>())));
                let k4 = deriv(&p1, &v1, &(*x + k3.scale(h)));
                let mut xn = *x + (k1 + k4 + (k2 + k3).scale(two::<T>())).scale(h / lit(6.0));
                xn = xn - p1.scale(minkowski_dot(&xn, &p1) / m2);
                *x = xn;
            }
            idx += 1;
            hook(idx, &p1, xs)?;
        }
    }
    Ok(())
}

/// Transports a tangent four-vector along the path with the ambient engine.
/// The input must be tangent at the start point (η(x, p) = 0 within roundoff).
pub fn transport_vector_ambient<T: Real>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
    x0: &FourVector<T>,
) -> Result<FourVector<T>> {
    let p0 = path.start_point(geom);
    let pairing = minkowski_dot(x0, &p0);
    let scale = (T::one() + x0.max_abs()) * (T::one() + p0.max_abs());
    if pairing.abs() > join_tol::<T>() * scale {
        return Err(Error::NotTangent {
            pairing: diag(pairing),
        });
    }
    let mut xs = [*x0];
    ambient_transport_multi(geom, path, &mut xs, &mut |_, _, _| Ok(()))?;
    Ok(xs[0])
}

/// Transports chart components of a tangent vector with the intrinsic
/// (Christoffel) engine. Requires chart regularity along the whole path.
pub fn transport_vector_intrinsic<T: Real>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
    x0: &Vec3<T>,
) -> Result<Vec3<T>> {
    path.require_chart_regular(geom)?;
    let deriv = |z: &ChartPoint<T>, zdot: &Vec3<T>, x: &Vec3<T>| -> Vec3<T> {
        let gam = geom.christoffel(z);
        let mut out = Vec3::zero();
        for i in 0..3 {
            let mut s = T::zero();
            for j in 0..3 {
                for k in 0..3 {
                    s = s + gam[i][j][k] * zdot.0[j] * x.0[k];
                }
            }
            out.0[i] = -s;
        }
        out
    };
    let mut x = *x0;
    for (seg, steps) in path.parts() {
        let n = *steps;
        let nn = count::<T>(n);
        let h = nn.recip();
        for k in 0..n {
            let t0 = count::<T>(k) / nn;
            let tm = (count::<T>(k) + half::<T>()) / nn;
            let t1 = count::<T>(k + 1) / nn;
            let (z0, zd0) = seg.chart_state(geom, t0);
            let (zm, zdm) = seg.chart_state(geom, tm);
            let (z1, zd1) = seg.chart_state(geom, t1);
            let k1 = deriv(&z0, &zd0, &x);
            let k2 = deriv(&zm, &zdm, &(x + k1.scale(h * half::<T>())));
            let k3 = deriv(&zm, &zdm, &(x + k2.scale(h * half::<T>())));
            let k4 = deriv(&z1, &zd1, &(x + k3.scale(h)));
            x = x + (k1 + k4 + (k2 + k3).scale(two::<T>())).scale(h / lit(6.0));
        }
    }
    Ok(x)
}

/// The path-ordered SU(2) propagator of the spinor connection along the
/// path: the product of exp(−ω^s_i(z_mid) Δzⁱ) over consecutive samples,
/// with z_mid the chord midpoint projected back to the shell. Second-order
/// accurate in the step size. Requires chart regularity along the path.
pub fn spinor_propagator<T: Real>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
) -> Result<CMat2<T>> {
    path.require_chart_regular(geom)?;
    let mut u = CMat2::identity();
    for (seg, steps) in path.parts() {
        let n = *steps;
        let nn = count::<T>(n);
        for k in 0..n {
            let t0 = count::<T>(k) / nn;
            let t1 = count::<T>(k + 1) / nn;
            let p0 = seg.point(geom, t0);
            let p1 = seg.point(geom, t1);
            let z0 = geom.chart_of_raw(&p0);
            let z1 = geom.chart_of_raw(&p1);
            let mid = geom.project_to_shell(&(p0 + p1).scale(half::<T>()))?;
            let zm = geom.chart_of_raw(&mid);
            let dz = [
                z1.rho - z0.rho,
                z1.theta - z0.theta,
                wrap_to_pi(z1.phi - z0.phi),
            ];
            let ws = spinor_connection(geom, &zm);
            let mut m = CMat2::zero();
            for i in 0..3 {
                m = m + ws[i].scale_re(dz[i]);
            }
            // Re-project onto SU(2) each step so the accumulated product
            // stays unitary to machine precision regardless of step count.
            u = (su2_exp(&m.scale_re(-T::one())) * u).nearest_su2();
        }
    }
    Ok(u)
}

/// Applies the path propagator to a spinor: ψ ↦ U ψ.
pub fn transport_spinor<T: Real>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
    psi: &Spinor<T>,
) -> Result<Spinor<T>> {
    Ok(spinor_propagator(geom, path)? * *psi)
}

/// Basis in which a loop holonomy is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HolonomyBasis {
    /// Axes obtained by boosting the rest Cartesian axes to the base point
    /// with the pure boost L(p). Defined for every base point; at the rest
    /// momentum these are the Cartesian axes themselves.
    RestCartesian,
    /// The orthonormal chart frame (e₁, e₂, e₃). Requires the chart to be
    /// regular along the loop.
    OrthonormalFrame,
}

/// Holonomy of a closed loop: SO(3) matrix in the declared basis, its
/// canonical angle-axis form, the SU(2) lift with continuity-fixed sign, and
/// a step-doubling estimate (radians) of the discretization error.
#[derive(Debug, Clone)]
pub struct HolonomyResult<T> {
    pub so3: Rotation3<T>,
    pub su2: CMat2<T>,
    pub angle_axis: AngleAxis<T>,
    pub convergence: T,
    pub basis: HolonomyBasis,
}

impl<T: Real> HolonomyResult<T> {
    fn identity(basis: HolonomyBasis) -> Self {
        HolonomyResult {
            so3: Rotation3::identity(),
            su2: CMat2::identity(),
            angle_axis: AngleAxis {
                angle: T::zero(),
                axis: Vec3::basis(2),
            },
            convergence: T::zero(),
            basis,
        }
    }
}

/// The default basis rule: rest-Cartesian when the loop is based at (or
/// numerically at) the rest momentum or the chart is singular somewhere on
/// the loop; the orthonormal frame otherwise.
pub fn default_holonomy_basis<T: Real>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
) -> HolonomyBasis {
    let p0 = path.start_point(geom);
    if p0.spatial().norm() <= join_tol::<T>() * geom.mass() || !path.chart_regular(geom) {
        HolonomyBasis::RestCartesian
    } else {
        HolonomyBasis::OrthonormalFrame
    }
}

/// Runs the ambient engine around the loop once and returns the final gauge
/// rotation matrix plus the continuity-aligned quaternion of the rotation
/// path.
fn holonomy_single_run<T: Real>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
    basis: HolonomyBasis,
) -> Result<(Mat3<T>, [T; 4])> {
    let p0 = path.start_point(geom);
    let mut xs: [FourVector<T>; 3] = match basis {
        HolonomyBasis::RestCartesian => {
            let l = boost_from_momentum(&p0, geom.mass())?;
            let mut out = [Vec4::zero(); 3];
            for (i, slot) in out.iter_mut().enumerate() {
                let mut e = Vec4::zero();
                e.0[i + 1] = T::one();
                *slot = l.apply(&e);
            }
            out
        }
        HolonomyBasis::OrthonormalFrame => {
            path.require_chart_regular(geom)?;
            geom.frame_ambient(&geom.chart_of_raw(&p0))
        }
    };
    let gauge = |p: &FourVector<T>, xs: &[FourVector<T>; 3]| -> Result<Mat3<T>> {
        let mut r = Mat3::zero();
        match basis {
            HolonomyBasis::RestCartesian => {
                let l_inv = boost_from_momentum(p, geom.mass())?.inverse();
                for (j, x) in xs.iter().enumerate() {
                    let back = l_inv.apply(x);
                    for i in 0..3 {
                        r.0[i][j] = back.0[i + 1];
                    }
                }
            }
            HolonomyBasis::OrthonormalFrame => {
                let frame = geom.frame_ambient(&geom.chart_of_raw(p));
                for (b, x) in xs.iter().enumerate() {
                    for a in 0..3 {
                        r.0[a][b] = -minkowski_dot(x, &frame[a]);
                    }
                }
            }
        }
        Ok(r)
    };
    let total = path.total_steps();
    let stride = (total / 256).max(1);
    let mut q_prev = [T::one(), T::zero(), T::zero(), T::zero()];
    let mut r_last = Mat3::identity();
    ambient_transport_multi(geom, path, &mut xs, &mut |idx, p, xs| {
        if idx % stride == 0 || idx == total {
            let r = gauge(p, xs)?;
            let mut q = quaternion_from_rotation(&r);
            let dot = (0..4).map(|i| q[i] * q_prev[i]).fold(T::zero(), |a, b| a + b);
            if dot < T::zero() {
                for qi in q.iter_mut() {
                    *qi = -*qi;
                }
            }
            q_prev = q;
            r_last = r;
        }
        Ok(())
    })?;
    Ok((r_last, q_prev))
}

/// Holonomy of a closed loop in an explicitly chosen basis.
///
/// The loop must be closed. The transported triple is re-orthonormalized
/// through its quaternion, so the reported SO(3) matrix is exactly the image
/// of the reported SU(2) lift under the covering map.
pub fn holonomy_of_loop_in_basis<T: Real>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
    basis: HolonomyBasis,
) -> Result<HolonomyResult<T>> {
    path.require_closed(geom)?;
    let (r_raw, q) = holonomy_single_run(geom, path, basis)?;
    let defect = r_raw.orthogonality_defect();
    if defect > rotation_gate_tol::<T>() {
        return Err(Error::NotARotation {
            defect: diag(defect),
        });
    }
    let su2 = su2_from_quaternion(&q);
    let so3 = su2_to_so3(&su2);
    let angle_axis = canonical_angle_axis(&rotation_to_angle_axis(&so3)?);
    let (r_half, _) = holonomy_single_run(geom, &path.halved(), basis)?;
    let half_rot = su2_to_so3(&su2_from_quaternion(&quaternion_from_rotation(&r_half)));
    let convergence = so3.angle_between(&half_rot) / lit(AMBIENT_ORDER_FACTOR);
    Ok(HolonomyResult {
        so3,
        su2,
        angle_axis,
        convergence,
        basis,
    })
}

/// Holonomy of a closed loop in the default basis
/// (see [`default_holonomy_basis`]).
pub fn holonomy_of_loop<T: Real>(
    geom: &ShellGeometry<T>,
    path: &ShellPath<T>,
) -> Result<HolonomyResult<T>> {
    holonomy_of_loop_in_basis(geom, path, default_holonomy_basis(geom, path))
}

/// Holonomy of the geodesic triangle attached to a pair of boosts, plus a
/// degeneracy flag.
#[derive(Debug, Clone)]
pub struct TriangleHolonomy<T> {
    pub holonomy: HolonomyResult<T>,
    /// True when the two boost velocities are collinear (or one vanishes):
    /// the triangle collapses and the holonomy is the identity by convention.
    pub degenerate: bool,
    /// The loop vertices (rest momentum and the two boosted images).
    pub vertices: [FourVector<T>; 3],
}

/// Builds the geodesic triangle whose holonomy reproduces the Thomas–Wigner
/// rotation of the boost pair (v₁ then v₂) and integrates around it with the
/// ambient engine, in the rest-Cartesian basis.
///
/// Vertices: p_A = rest, p_B = L(v₂) p_A, p_C = L(v₂)L(v₁) p_A, traversed
/// A → B → C → A. Parallel transport along a shell geodesic through the
/// rest momentum is exactly the connecting pure boost (geodesics are boost
/// orbits), and the three transvections compose to L(v₁₂)⁻¹ L(v₂) L(v₁) for
/// this vertex set — the same product that defines the algebraic rotation.
pub fn triangle_holonomy<T: Real>(
    geom: &ShellGeometry<T>,
    v1: &Velocity3<T>,
    v2: &Velocity3<T>,
    steps_per_side: usize,
) -> Result<TriangleHolonomy<T>> {
    let rest = geom.rest_momentum();
    let b2 = pure_boost(v2);
    let p_b = b2.apply(&rest);
    let p_c = (b2 * pure_boost(v1)).apply(&rest);
    let cross = v1.components().cross(&v2.components()).norm();
    let scale = v1.speed() * v2.speed();
    if cross <= lit::<T>(1e-12) * scale.max(lit(1e-300)) || scale == T::zero() {
        return Ok(TriangleHolonomy {
            holonomy: HolonomyResult::identity(HolonomyBasis::RestCartesian),
            degenerate: true,
            vertices: [rest, p_b, p_c],
        });
    }
    let path = ShellPath::triangle(geom, [rest, p_b, p_c], steps_per_side)?;
    let holonomy = holonomy_of_loop_in_basis(geom, &path, HolonomyBasis::RestCartesian)?;
    Ok(TriangleHolonomy {
        holonomy,
        degenerate: false,
        vertices: [rest, p_b, p_c],
    })
}

/// Holonomy of the full parallel circle at (ρ, θ), integrated with the
/// ambient engine in the orthonormal-frame basis.
pub fn circle_holonomy<T: Real>(
    geom: &ShellGeometry<T>,
    rho: T,
    theta: T,
    steps: usize,
) -> Result<HolonomyResult<T>> {
    let path = ShellPath::circle(geom, rho, theta, steps)?;
    holonomy_of_loop_in_basis(geom, &path, HolonomyBasis::OrthonormalFrame)
}

/// Closed-form holonomy of a parallel-circle arc at (ρ, θ) sweeping `span`
/// radians of φ, in the orthonormal-frame basis.
///
/// Along such an arc the connection coefficient is the constant matrix
/// ω_φ = hat(c) with c = (cosθ, −(E/m) sinθ, 0), so the path-ordered product
/// is exactly exp(−span · c · J) in SU(2) (center sign included) and its
/// covering rotation in SO(3). At θ = π/2 and span = 2π this gives a
/// rotation by 2π(γ − 1) about e₂ (γ = E/m), the Thomas precession of one
/// full orbit.
pub fn circle_holonomy_closed_form<T: Real>(
    geom: &ShellGeometry<T>,
    rho: T,
    theta: T,
    span: T,
) -> (CMat2<T>, Rotation3<T>) {
    let em = geom.energy(rho) / geom.mass();
    let c = Vec3([theta.cos(), -em * theta.sin(), T::zero()]);
    let u = su2_exp(&su2_from_coefficients(&c.scale(-span)));
    let r = su2_to_so3(&u);
    (u, r)
}

/// The Thomas precession angle of one full circular orbit at speed `v`:
/// α = 2π(γ − 1), unwrapped (it exceeds 2π for γ > 2).
pub fn thomas_precession_angle<T: Real>(speed: T) -> Result<T> {
    if !speed.is_finite() {
        return Err(Error::NonFinite { value: diag(speed) });
    }
    if speed < T::zero() || speed >= T::one() {
        return Err(Error::Superluminal { speed: diag(speed) });
    }
    let gamma = (T::one() - speed * speed).sqrt().recip();
    Ok((T::PI() + T::PI()) * (gamma - T::one()))
}

/// The chart radius of the circular orbit with lab speed `v`: ρ = m γ v.
pub fn orbit_radius_for_speed<T: Real>(geom: &ShellGeometry<T>, speed: T) -> Result<T> {
    if !speed.is_finite() {
        return Err(Error::NonFinite { value: diag(speed) });
    }
    if speed < T::zero() || speed >= T::one() {
        return Err(Error::Superluminal { speed: diag(speed) });
    }
    let gamma = (T::one() - speed * speed).sqrt().recip();
    Ok(geom.mass() * gamma * speed)
}

/// Thomas precession measured geometrically: the holonomy of the equatorial
/// momentum circle traced by a circular orbit at speed `v`.
pub fn precession_holonomy<T: Real>(
    geom: &ShellGeometry<T>,
    speed: T,
    steps: usize,
) -> Result<HolonomyResult<T>> {
    let rho = orbit_radius_for_speed(geom, speed)?;
    circle_holonomy(geom, rho, T::PI() * half::<T>(), steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{rotation_from_angle_axis, su2_from_angle_axis};
    use crate::tolerances;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn geom() -> ShellGeometry<f64> {
        ShellGeometry::new(1.0).unwrap()
    }

    fn vel(x: f64, y: f64, z: f64) -> Velocity3<f64> {
        Velocity3::from_components(x, y, z).unwrap()
    }

    #[test]
    fn path_validation_errors() {
        let g = geom();
        assert!(matches!(
            ShellPath::new(&g, vec![]),
            Err(Error::EmptyPath)
        ));
        let circ = PathSegment::Circle {
            rho: 0.75,
            theta: FRAC_PI_2,
            phi_start: 0.0,
            phi_end: 2.0 * PI,
        };
        assert!(matches!(
            ShellPath::new(&g, vec![(circ.clone(), 1)]),
            Err(Error::TooFewSteps { .. })
        ));
        // Disconnected segments.
        let a = g.rest_momentum();
        let b = pure_boost(&vel(0.5, 0.0, 0.0)).apply(&a);
        let c = pure_boost(&vel(0.0, 0.5, 0.0)).apply(&a);
        let s1 = PathSegment::Geodesic(g.geodesic(&a, &b).unwrap());
        let s2 = PathSegment::Geodesic(g.geodesic(&c, &a).unwrap());
        assert!(matches!(
            ShellPath::new(&g, vec![(s1.clone(), 10), (s2, 10)]),
            Err(Error::OpenPath { .. })
        ));
        // Open loop rejected by holonomy.
        let open = ShellPath::new(&g, vec![(s1, 10)]).unwrap();
        assert!(matches!(
            holonomy_of_loop(&g, &open),
            Err(Error::OpenPath { .. })
        ));
        // Degenerate circles rejected.
        assert!(ShellPath::circle(&g, 0.0, FRAC_PI_2, 10).is_err());
        assert!(ShellPath::circle(&g, 0.5, 0.0, 10).is_err());
    }

    #[test]
    fn ambient_transport_preserves_invariants() {
        let g = geom();
        let z0 = crate::shell::ChartPoint::new(0.75, FRAC_PI_3, 0.0).unwrap();
        let p0 = g.embed(&z0);
        let x0 = g.chart_to_ambient_components(&z0, &Vec3([0.4, -0.2, 0.7]));
        let path = ShellPath::new(
            &g,
            vec![(
                PathSegment::Circle {
                    rho: 0.75,
                    theta: FRAC_PI_3,
                    phi_start: 0.0,
                    phi_end: FRAC_PI_2,
                },
                800,
            )],
        )
        .unwrap();
        let x1 = transport_vector_ambient(&g, &path, &x0).unwrap();
        let p1 = path.end_point(&g);
        // Norm preserved, tangency preserved.
        assert!(
            (minkowski_dot(&x1, &x1) - minkowski_dot(&x0, &x0)).abs()
                < tolerances::VECTOR_NORM_DRIFT
        );
        assert!(minkowski_dot(&x1, &p1).abs() < 1e-12);
        // Non-tangent input rejected.
        assert!(matches!(
            transport_vector_ambient(&g, &path, &p0),
            Err(Error::NotTangent { .. })
        ));
    }

    #[test]
    fn intrinsic_agrees_with_ambient_on_arc() {
        let g = geom();
        let z0 = crate::shell::ChartPoint::new(0.9, 1.1, 0.3).unwrap();
        let xc0 = Vec3([0.5, -0.1, 0.25]);
        let path = ShellPath::new(
            &g,
            vec![(
                PathSegment::Circle {
                    rho: 0.9,
                    theta: 1.1,
                    phi_start: 0.3,
                    phi_end: 0.3 + 2.2,
                },
                1000,
            )],
        )
        .unwrap();
        let xc1 = transport_vector_intrinsic(&g, &path, &xc0).unwrap();
        let x0 = g.chart_to_ambient_components(&z0, &xc0);
        let x1 = transport_vector_ambient(&g, &path, &x0).unwrap();
        let z1 = g.chart_of(&path.end_point(&g)).unwrap();
        let xc1_from_ambient = g.ambient_to_chart_components(&z1, &x1);
        assert!(xc1.max_abs_diff(&xc1_from_ambient) < 1e-9);
    }

    #[test]
    fn intrinsic_agrees_with_ambient_on_geodesic() {
        let g = geom();
        let za = crate::shell::ChartPoint::new(0.8, 1.2, 0.2).unwrap();
        let zb = crate::shell::ChartPoint::new(1.4, 0.9, 1.5).unwrap();
        let (pa, pb) = (g.embed(&za), g.embed(&zb));
        let path = ShellPath::new(
            &g,
            vec![(PathSegment::Geodesic(g.geodesic(&pa, &pb).unwrap()), 1200)],
        )
        .unwrap();
        let xc0 = Vec3([-0.3, 0.6, 0.1]);
        let xc1 = transport_vector_intrinsic(&g, &path, &xc0).unwrap();
        let x0 = g.chart_to_ambient_components(&za, &xc0);
        let x1 = transport_vector_ambient(&g, &path, &x0).unwrap();
        let xc1_from_ambient = g.ambient_to_chart_components(&zb, &x1);
        assert!(xc1.max_abs_diff(&xc1_from_ambient) < tolerances::ENGINE_AGREEMENT);
    }

    #[test]
    fn circle_holonomy_matches_closed_form() {
        // v = 0.6 orbit: ρ = 0.75, γ = 1.25, α = π/2 about e₂.
        let g = geom();
        let hol = circle_holonomy(&g, 0.75, FRAC_PI_2, 2000).unwrap();
        assert!((hol.angle_axis.angle - FRAC_PI_2).abs() < tolerances::CIRCLE_VS_CLOSED);
        assert!(hol.angle_axis.axis.max_abs_diff(&Vec3::basis(1)) < 1e-5);
        let (u_exact, r_exact) = circle_holonomy_closed_form(&g, 0.75, FRAC_PI_2, 2.0 * PI);
        assert!(hol.so3.0.max_abs_diff(&r_exact.0) < 1e-6);
        // The SU(2) lift lands on the path-ordered sheet (center sign −1
        // relative to the naive half-angle form).
        assert!(hol.su2.max_abs_diff(&u_exact) < 1e-6);
        let naive = su2_from_angle_axis(&AngleAxis {
            angle: FRAC_PI_2,
            axis: Vec3::basis(1),
        });
        assert!(hol.su2.max_abs_diff(&naive.scale_re(-1.0)) < 1e-6);
        // Covering map consistency is exact by construction.
        assert!(su2_to_so3(&hol.su2).0.max_abs_diff(&hol.so3.0) < 1e-15);
    }

    #[test]
    fn spinor_engine_matches_closed_form_with_sign() {
        let g = geom();
        let path = ShellPath::circle(&g, 0.75, FRAC_PI_2, 2000).unwrap();
        let u = spinor_propagator(&g, &path).unwrap();
        let (u_exact, _) = circle_holonomy_closed_form(&g, 0.75, FRAC_PI_2, 2.0 * PI);
        assert!(u.max_abs_diff(&u_exact) < 5e-6);
        assert!(u.unitarity_defect() < tolerances::SPINOR_NORM_DRIFT * 2000.0);
        // A spin-up spinor returns rotated by −exp(−i(π/4)σ₂), i.e. to
        // (−cos π/4, −sin π/4).
        let psi = transport_spinor(&g, &path, &Spinor::up()).unwrap();
        let c = core::f64::consts::FRAC_PI_4.cos();
        assert!((psi.0[0].re - (-c)).abs() < 1e-5);
        assert!((psi.0[1].re - (-c)).abs() < 1e-5);
        let expect = u_exact * Spinor::up();
        assert!(psi.max_abs_diff(&expect) < 5e-6);
    }

    #[test]
    fn triangle_holonomy_matches_algebraic_rotation() {
        let g = geom();
        let tri = triangle_holonomy(&g, &vel(0.6, 0.0, 0.0), &vel(0.0, 0.6, 0.0), 1000).unwrap();
        assert!(!tri.degenerate);
        let aa = &tri.holonomy.angle_axis;
        assert!((aa.angle - 0.2213144423477913).abs() < 1e-7);
        assert!(aa.axis.max_abs_diff(&Vec3::basis(2)) < 1e-6);
        let expect = rotation_from_angle_axis(&AngleAxis {
            angle: 0.2213144423477913,
            axis: Vec3::basis(2),
        });
        assert!(tri.holonomy.so3.0.max_abs_diff(&expect.0) < 1e-6);
        assert!(tri.holonomy.convergence < 1e-7);
        assert_eq!(tri.holonomy.basis, HolonomyBasis::RestCartesian);
    }

    #[test]
    fn degenerate_triangle_flagged() {
        let g = geom();
        for (v1, v2) in [
            (vel(0.3, 0.0, 0.0), vel(0.6, 0.0, 0.0)),
            (vel(0.0, 0.0, 0.0), vel(0.5, 0.0, 0.0)),
            (vel(0.2, 0.2, 0.0), vel(-0.4, -0.4, 0.0)),
        ] {
            let tri = triangle_holonomy(&g, &v1, &v2, 100).unwrap();
            assert!(tri.degenerate);
            assert!(tri.holonomy.so3.0.max_abs_diff(&Mat3::identity()) == 0.0);
            assert_eq!(tri.holonomy.angle_axis.angle, 0.0);
        }
    }

    #[test]
    fn precession_holonomy_spot_value() {
        let g = geom();
        // v = 0.6: α = 2π(γ−1) = π/2.
        assert!((thomas_precession_angle(0.6).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((orbit_radius_for_speed(&g, 0.6).unwrap() - 0.75).abs() < 1e-15);
        let hol = precession_holonomy(&g, 0.6, 1500).unwrap();
        assert!((hol.angle_axis.angle - FRAC_PI_2).abs() < 3e-6);
        assert!(thomas_precession_angle(1.0).is_err());
        assert!(thomas_precession_angle(-0.1).is_err());
    }

    #[test]
    fn convergence_estimate_brackets_error() {
        // The step-doubling estimate should bound the true error of the
        // full-resolution run to within a small factor on a smooth problem.
        let g = geom();
        let hol = circle_holonomy(&g, 0.75, FRAC_PI_2, 400).unwrap();
        let true_err = (hol.angle_axis.angle - FRAC_PI_2).abs();
        assert!(true_err < 10.0 * hol.convergence.max(1e-12));
    }

    #[test]
    fn holonomy_basis_default_rule() {
        let g = geom();
        let circle = ShellPath::circle(&g, 0.75, FRAC_PI_2, 100).unwrap();
        assert_eq!(
            default_holonomy_basis(&g, &circle),
            HolonomyBasis::OrthonormalFrame
        );
        let rest = g.rest_momentum();
        let b = pure_boost(&vel(0.0, 0.6, 0.0)).apply(&rest);
        let c = (pure_boost(&vel(0.0, 0.6, 0.0)) * pure_boost(&vel(0.6, 0.0, 0.0))).apply(&rest);
        let tri = ShellPath::triangle(&g, [rest, b, c], 100).unwrap();
        assert_eq!(
            default_holonomy_basis(&g, &tri),
            HolonomyBasis::RestCartesian
        );
    }
}
