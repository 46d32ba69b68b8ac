//! Intrinsic geometry of the mass shell (momentum hyperboloid).
//!
//! The shell of mass m > 0 is the set of future-timelike momenta with
//! η(p, p) = m², a three-dimensional hyperboloid of constant sectional
//! curvature −1/m² sitting inside momentum Minkowski space. Spherical chart:
//!
//!   f(ρ, θ, φ) = (E, ρ sinθ cosφ, ρ sinθ sinφ, ρ cosθ),  E = √(m² + ρ²),
//!
//! with ρ ≥ 0 the spatial momentum magnitude. The chart is regular for ρ > 0
//! and sinθ ≠ 0. The induced metric (pullback of η, hence negative definite)
//! is diagonal:
//!
//!   g = diag(−m²/E², −ρ², −ρ² sin²θ).
//!
//! Christoffel symbols are insensitive to the overall sign of g, so all
//! formulas below agree with the Riemannian convention on −g.

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3, Vec4};
use crate::lorentz::{boost_from_momentum, minkowski_dot, FourVector};
use crate::scalar::{diag, half, lit, Real};
use crate::tolerances;
use serde::{Deserialize, Serialize};

/// Chart indices, in storage order ρ = 0, θ = 1, φ = 2.
pub const RHO: usize = 0;
/// See [`RHO`].
pub const THETA: usize = 1;
/// See [`RHO`].
pub const PHI: usize = 2;

/// A point of the spherical chart `(ρ, θ, φ)`, angles in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint<T> {
    pub rho: T,
    pub theta: T,
    pub phi: T,
}

impl<T: Real> ChartPoint<T> {
    /// Validates ρ ≥ 0 and all entries finite. (θ, φ) are unrestricted; the
    /// embedding is 2π-periodic in both.
    pub fn new(rho: T, theta: T, phi: T) -> Result<Self> {
        for v in [rho, theta, phi] {
            if !v.is_finite() {
                return Err(Error::NonFinite { value: diag(v) });
            }
        }
        if rho < T::zero() {
            return Err(Error::NegativeRho { rho: diag(rho) });
        }
        Ok(ChartPoint { rho, theta, phi })
    }

    /// Chart components as a vector in index order (ρ, θ, φ).
    pub fn coords(&self) -> Vec3<T> {
        Vec3([self.rho, self.theta, self.phi])
    }

    pub fn from_coords(z: &Vec3<T>) -> Result<Self> {
        Self::new(z.0[0], z.0[1], z.0[2])
    }

    /// True when the chart is regular here: ρ > 0 and sinθ bounded away from
    /// zero, both relative to [`tolerances::CHART_DEGENERACY_REL`].
    pub fn is_regular(&self) -> bool {
        self.rho > T::zero() && self.theta.sin().abs() > lit(tolerances::CHART_DEGENERACY_REL)
    }
}

/// The mass shell of a fixed mass, carrying every intrinsic-geometry
/// operation: embedding, metric, connection coefficients, curvature, frames,
/// and closed-form geodesics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellGeometry<T> {
    mass: T,
}

impl<T: Real> ShellGeometry<T> {
    pub fn new(mass: T) -> Result<Self> {
        if !mass.is_finite() {
            return Err(Error::NonFinite { value: diag(mass) });
        }
        if !(mass > T::zero()) {
            return Err(Error::NonPositiveMass { mass: diag(mass) });
        }
        Ok(ShellGeometry { mass })
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    /// The rest momentum `(m, 0, 0, 0)`.
    pub fn rest_momentum(&self) -> FourVector<T> {
        Vec4::new(self.mass, T::zero(), T::zero(), T::zero())
    }

    /// On-shell energy `E(ρ) = √(m² + ρ²)`.
    pub fn energy(&self, rho: T) -> T {
        self.mass.hypot(rho)
    }

    /// Embeds a chart point as an on-shell four-momentum.
    pub fn embed(&self, z: &ChartPoint<T>) -> FourVector<T> {
        let (st, ct) = (z.theta.sin(), z.theta.cos());
        let (sp, cp) = (z.phi.sin(), z.phi.cos());
        Vec4::new(
            self.energy(z.rho),
            z.rho * st * cp,
            z.rho * st * sp,
            z.rho * ct,
        )
    }

    /// Chart coordinates of an on-shell momentum, with θ ∈ [0, π] and
    /// φ ∈ (−π, π]. Fails with [`Error::ChartSingular`] where the chart
    /// degenerates (on the energy axis ρ = 0 or the polar axis sinθ = 0).
    pub fn chart_of(&self, p: &FourVector<T>) -> Result<ChartPoint<T>> {
        crate::lorentz::check_on_shell(p, self.mass, tolerances::DEFAULT_INVARIANT_TOL)?;
        let rho = p.spatial().norm();
        let h = p.0[1].hypot(p.0[2]);
        let theta = h.atan2(p.0[3]);
        let phi = p.0[2].atan2(p.0[1]);
        let z = ChartPoint { rho, theta, phi };
        if !z.is_regular() {
            return Err(Error::ChartSingular {
                rho: diag(rho),
                theta: diag(theta),
            });
        }
        Ok(z)
    }

    /// Radial retraction of a timelike four-vector onto the shell:
    /// `q ↦ q · m/√η(q,q)`.
    pub fn project_to_shell(&self, q: &FourVector<T>) -> Result<FourVector<T>> {
        if !q.is_finite() {
            return Err(Error::NonFinite { value: f64::NAN });
        }
        let s = minkowski_dot(q, q);
        if !(s > T::zero()) || !(q.time() > T::zero()) {
            return Err(Error::NotFutureTimelike {
                time_component: diag(q.time()),
            });
        }
        Ok(q.scale(self.mass / s.sqrt()))
    }

    /// Pullback metric `g_ij` at a chart point, `diag(−m²/E², −ρ², −ρ²sin²θ)`.
    pub fn metric(&self, z: &ChartPoint<T>) -> Mat3<T> {
        let e2 = self.mass * self.mass + z.rho * z.rho;
        let st = z.theta.sin();
        let mut g = Mat3::zero();
        g.0[RHO][RHO] = -(self.mass * self.mass) / e2;
        g.0[THETA][THETA] = -(z.rho * z.rho);
        g.0[PHI][PHI] = -(z.rho * z.rho) * st * st;
        g
    }

    /// Inverse metric `g^ij` (requires a regular chart point).
    pub fn metric_inverse(&self, z: &ChartPoint<T>) -> Mat3<T> {
        let e2 = self.mass * self.mass + z.rho * z.rho;
        let st = z.theta.sin();
        let mut g = Mat3::zero();
        g.0[RHO][RHO] = -e2 / (self.mass * self.mass);
        g.0[THETA][THETA] = -(z.rho * z.rho).recip();
        g.0[PHI][PHI] = -(z.rho * st * (z.rho * st)).recip();
        g
    }

    /// Christoffel symbols `Γ^i_{jk}` (symmetric in j, k), indexed
    /// `[i][j][k]` in chart order (ρ, θ, φ).
    ///
    /// Requires a regular chart point; entries are unbounded as ρ → 0 or
    /// sinθ → 0.
    pub fn christoffel(&self, z: &ChartPoint<T>) -> [[[T; 3]; 3]; 3] {
        let m2 = self.mass * self.mass;
        let rho = z.rho;
        let e2 = m2 + rho * rho;
        let (st, ct) = (z.theta.sin(), z.theta.cos());
        let mut g = [[[T::zero(); 3]; 3]; 3];
        g[RHO][RHO][RHO] = -rho / e2;
        g[RHO][THETA][THETA] = -rho * e2 / m2;
        g[RHO][PHI][PHI] = -rho * e2 / m2 * st * st;
        g[THETA][RHO][THETA] = rho.recip();
        g[THETA][THETA][RHO] = rho.recip();
        g[THETA][PHI][PHI] = -st * ct;
        g[PHI][RHO][PHI] = rho.recip();
        g[PHI][PHI][RHO] = rho.recip();
        g[PHI][THETA][PHI] = ct / st;
        g[PHI][PHI][THETA] = ct / st;
        g
    }

    /// Analytic partial derivatives of the Christoffel symbols with respect
    /// to ρ and θ (all φ-derivatives vanish by axisymmetry). Returned as
    /// `(∂_ρ Γ, ∂_θ Γ)`, each indexed like [`Self::christoffel`].
    pub fn christoffel_partials(&self, z: &ChartPoint<T>) -> ([[[T; 3]; 3]; 3], [[[T; 3]; 3]; 3]) {
        let m2 = self.mass * self.mass;
        let rho = z.rho;
        let r2 = rho * rho;
        let e2 = m2 + r2;
        let (st, ct) = (z.theta.sin(), z.theta.cos());
        let three = lit::<T>(3.0);

        let mut dr = [[[T::zero(); 3]; 3]; 3];
        dr[RHO][RHO][RHO] = (r2 - m2) / (e2 * e2);
        dr[RHO][THETA][THETA] = -T::one() - three * r2 / m2;
        dr[RHO][PHI][PHI] = (-T::one() - three * r2 / m2) * st * st;
        dr[THETA][RHO][THETA] = -r2.recip();
        dr[THETA][THETA][RHO] = -r2.recip();
        dr[PHI][RHO][PHI] = -r2.recip();
        dr[PHI][PHI][RHO] = -r2.recip();

        let mut dt = [[[T::zero(); 3]; 3]; 3];
        dt[RHO][PHI][PHI] = -(rho * e2 / m2) * (st + st) * ct;
        dt[THETA][PHI][PHI] = -(ct * ct - st * st);
        dt[PHI][THETA][PHI] = -(st * st).recip();
        dt[PHI][PHI][THETA] = -(st * st).recip();
        (dr, dt)
    }

    /// Riemann curvature `R^i_{jkl} = ∂_k Γ^i_{lj} − ∂_l Γ^i_{kj}
    /// + Γ^i_{km} Γ^m_{lj} − Γ^i_{lm} Γ^m_{kj}`, indexed `[i][j][k][l]`.
    pub fn riemann(&self, z: &ChartPoint<T>) -> [[[[T; 3]; 3]; 3]; 3] {
        let gam = self.christoffel(z);
        let (dr, dt) = self.christoffel_partials(z);
        let d = [dr, dt, [[[T::zero(); 3]; 3]; 3]];
        let mut r = [[[[T::zero(); 3]; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let mut v = d[k][i][l][j] - d[l][i][k][j];
                        for m in 0..3 {
                            v = v + gam[i][k][m] * gam[m][l][j] - gam[i][l][m] * gam[m][k][j];
                        }
                        r[i][j][k][l] = v;
                    }
                }
            }
        }
        r
    }

    /// Ricci scalar `g^{jl} R^i_{jil}`. For this metric it is the constant
    /// `+6/m²` (the sign reflects the negative-definite pullback convention).
    pub fn ricci_scalar(&self, z: &ChartPoint<T>) -> T {
        let r = self.riemann(z);
        let ginv = self.metric_inverse(z);
        let mut s = T::zero();
        for j in 0..3 {
            for l in 0..3 {
                let mut ric = T::zero();
                for i in 0..3 {
                    ric = ric + r[i][j][i][l];
                }
                s = s + ginv.0[j][l] * ric;
            }
        }
        s
    }

    /// Coordinate tangent basis `(∂_ρ f, ∂_θ f, ∂_φ f)` as ambient
    /// four-vectors at a chart point.
    pub fn tangent_basis(&self, z: &ChartPoint<T>) -> [FourVector<T>; 3] {
        let e = self.energy(z.rho);
        let (st, ct) = (z.theta.sin(), z.theta.cos());
        let (sp, cp) = (z.phi.sin(), z.phi.cos());
        let d_rho = Vec4::new(z.rho / e, st * cp, st * sp, ct);
        let d_theta = Vec4::new(T::zero(), z.rho * ct * cp, z.rho * ct * sp, -z.rho * st);
        let d_phi = Vec4::new(T::zero(), -z.rho * st * sp, z.rho * st * cp, T::zero());
        [d_rho, d_theta, d_phi]
    }

    /// Chart components of the orthonormal frame
    /// `e₁ = (E/m) ∂_ρ, e₂ = (1/ρ) ∂_θ, e₃ = (1/(ρ sinθ)) ∂_φ`,
    /// normalized so that η(e_a, e_b) = −δ_{ab}. Entry `[a]` holds the chart
    /// components of `e_a`. Requires a regular chart point.
    pub fn frame_chart_components(&self, z: &ChartPoint<T>) -> [Vec3<T>; 3] {
        let e = self.energy(z.rho);
        let st = z.theta.sin();
        [
            Vec3([e / self.mass, T::zero(), T::zero()]),
            Vec3([T::zero(), z.rho.recip(), T::zero()]),
            Vec3([T::zero(), T::zero(), (z.rho * st).recip()]),
        ]
    }

    /// Chart components of the dual coframe `θ¹ = (m/E) dρ, θ² = ρ dθ,
    /// θ³ = ρ sinθ dφ`; entry `[a]` holds the covector components of `θ^a`.
    pub fn coframe_chart_components(&self, z: &ChartPoint<T>) -> [Vec3<T>; 3] {
        let e = self.energy(z.rho);
        let st = z.theta.sin();
        [
            Vec3([self.mass / e, T::zero(), T::zero()]),
            Vec3([T::zero(), z.rho, T::zero()]),
            Vec3([T::zero(), T::zero(), z.rho * st]),
        ]
    }

    /// The orthonormal frame as ambient four-vectors.
    pub fn frame_ambient(&self, z: &ChartPoint<T>) -> [FourVector<T>; 3] {
        let basis = self.tangent_basis(z);
        let comp = self.frame_chart_components(z);
        let mut out = [Vec4::zero(); 3];
        for a in 0..3 {
            let mut v = Vec4::zero();
            for i in 0..3 {
                v = v + basis[i].scale(comp[a].0[i]);
            }
            out[a] = v;
        }
        out
    }

    /// Components of the frame in the rest basis: boosting each frame vector
    /// back to rest with `L(p)⁻¹` yields purely spatial unit vectors;
    /// column `a` holds the rest-Cartesian components of `e_a`.
    ///
    /// This is the dictionary between frame-indexed rotations (holonomies of
    /// the frame connection) and rotations of rest-Cartesian axes.
    pub fn frame_in_rest_basis(&self, z: &ChartPoint<T>) -> Result<Mat3<T>> {
        let p = self.embed(z);
        let inv = boost_from_momentum(&p, self.mass)?.inverse();
        let frame = self.frame_ambient(z);
        let mut s = Mat3::zero();
        for a in 0..3 {
            let r = inv.apply(&frame[a]);
            for i in 0..3 {
                s.0[i][a] = r.0[i + 1];
            }
        }
        Ok(s)
    }

    /// Chart extraction without the on-shell validation, for internal use on
    /// points produced by the closed-form curves (always on shell). The
    /// result may be chart-singular; callers check [`ChartPoint::is_regular`]
    /// where it matters.
    pub(crate) fn chart_of_raw(&self, p: &FourVector<T>) -> ChartPoint<T> {
        let rho = p.spatial().norm();
        let h = p.0[1].hypot(p.0[2]);
        ChartPoint {
            rho,
            theta: h.atan2(p.0[3]),
            phi: p.0[2].atan2(p.0[1]),
        }
    }

    /// Ambient tangent vector from chart components: `X = Xⁱ ∂_i f`.
    pub fn chart_to_ambient_components(&self, z: &ChartPoint<T>, xc: &Vec3<T>) -> FourVector<T> {
        let basis = self.tangent_basis(z);
        let mut x = Vec4::zero();
        for i in 0..3 {
            x = x + basis[i].scale(xc.0[i]);
        }
        x
    }

    /// Chart components of an ambient tangent vector at a regular chart
    /// point, through the orthonormal frame: `X^a = −η(X, e_a)`,
    /// `Xⁱ = Σ_a X^a (e_a)ⁱ`.
    pub fn ambient_to_chart_components(&self, z: &ChartPoint<T>, x: &FourVector<T>) -> Vec3<T> {
        let frame = self.frame_ambient(z);
        let comp = self.frame_chart_components(z);
        let mut xc = Vec3::zero();
        for a in 0..3 {
            let xa = -minkowski_dot(x, &frame[a]);
            xc = xc + comp[a].scale(xa);
        }
        xc
    }

    /// Frame components of an ambient tangent vector at a regular chart
    /// point: `X^a = −η(X, e_a)`.
    pub fn ambient_to_frame_components(&self, z: &ChartPoint<T>, x: &FourVector<T>) -> Vec3<T> {
        let frame = self.frame_ambient(z);
        let mut xa = Vec3::zero();
        for a in 0..3 {
            xa.0[a] = -minkowski_dot(x, &frame[a]);
        }
        xa
    }

    /// Rapidity separation `arccosh(η(a, b)/m²)` of two on-shell momenta.
    /// The metric arc length of the connecting geodesic is `m` times this.
    pub fn rapidity_distance(&self, a: &FourVector<T>, b: &FourVector<T>) -> T {
        let c = minkowski_dot(a, b) / (self.mass * self.mass);
        c.max(T::one()).acosh()
    }

    /// The unique shell geodesic between two on-shell momenta, in closed
    /// form. Both endpoints are validated against the shell constraint.
    pub fn geodesic(&self, a: &FourVector<T>, b: &FourVector<T>) -> Result<Geodesic<T>> {
        crate::lorentz::check_on_shell(a, self.mass, tolerances::DEFAULT_INVARIANT_TOL)?;
        crate::lorentz::check_on_shell(b, self.mass, tolerances::DEFAULT_INVARIANT_TOL)?;
        let d = self.rapidity_distance(a, b);
        Ok(Geodesic {
            ua: a.scale(self.mass.recip()),
            ub: b.scale(self.mass.recip()),
            mass: self.mass,
            dist: d,
        })
    }
}

/// A shell geodesic `p(t)`, `t ∈ [0, 1]`, in the closed form
///
///   p(t) = m [sinh((1−t) d) û_a + sinh(t d) û_b] / sinh d,
///
/// where û = p/m and d is the rapidity separation of the endpoints. The
/// parametrization is affine: η(ṗ, ṗ) = −(m d)² for all t. A degenerate
/// geodesic (coincident endpoints) is the constant curve.
#[derive(Debug, Clone, Copy)]
pub struct Geodesic<T> {
    ua: FourVector<T>,
    ub: FourVector<T>,
    mass: T,
    dist: T,
}

impl<T: Real> Geodesic<T> {
    /// Rapidity length d (metric length is m·d).
    pub fn rapidity_length(&self) -> T {
        self.dist
    }

    pub fn is_degenerate(&self) -> bool {
        self.dist < lit(1e-14)
    }

    pub fn start(&self) -> FourVector<T> {
        self.ua.scale(self.mass)
    }

    pub fn end(&self) -> FourVector<T> {
        self.ub.scale(self.mass)
    }

    /// The point at parameter `t ∈ [0, 1]`.
    pub fn point(&self, t: T) -> FourVector<T> {
        if self.is_degenerate() {
            return self.start();
        }
        let d = self.dist;
        let s = d.sinh();
        let ca = ((T::one() - t) * d).sinh() / s;
        let cb = (t * d).sinh() / s;
        self.ua.scale(self.mass * ca) + self.ub.scale(self.mass * cb)
    }

    /// The velocity dp/dt at parameter `t`.
    pub fn velocity(&self, t: T) -> FourVector<T> {
        if self.is_degenerate() {
            return Vec4::zero();
        }
        let d = self.dist;
        let s = d.sinh();
        let ca = -d * ((T::one() - t) * d).cosh() / s;
        let cb = d * (t * d).cosh() / s;
        self.ua.scale(self.mass * ca) + self.ub.scale(self.mass * cb)
    }
}

/// Midpoint of the shell geodesic between `a` and `b` (the normalized
/// Minkowski average, radially projected back to the shell).
pub fn geodesic_midpoint<T: Real>(
    geom: &ShellGeometry<T>,
    a: &FourVector<T>,
    b: &FourVector<T>,
) -> Result<FourVector<T>> {
    geom.project_to_shell(&(*a + *b).scale(half::<T>()))
}
