//! Lorentz boosts and the algebraic route to the Thomas–Wigner rotation.
//!
//! Conventions (natural units, c = 1):
//! - metric signature η = diag(+1, −1, −1, −1), matrices act on contravariant
//!   components p^μ = (p⁰, p¹, p², p³);
//! - a pure boost with velocity **v** (|v| < 1, γ = (1 − v²)^{−1/2}) is the
//!   symmetric matrix
//!   Λ⁰₀ = γ, Λ⁰ᵢ = Λᵢ⁰ = γvᵢ, Λᵢⱼ = δᵢⱼ + (γ − 1) vᵢvⱼ / v²;
//! - composing two non-collinear pure boosts is not a pure boost: it carries a
//!   spatial rotation, the Thomas–Wigner rotation
//!   R(v₁, v₂) = L(v₁₂)⁻¹ L(v₂) L(v₁)
//!   with v₁₂ the velocity of L(v₂)L(v₁) applied to the rest momentum.
//!
//! The spatial factor (γ − 1) vᵢvⱼ/v² is evaluated as γ²vᵢvⱼ/(γ + 1), which
//! is finite and accurate as v → 0.

use crate::error::{Error, Result};
use crate::linalg::{CMat2, Mat3, Mat4, Vec3, Vec4};
use crate::scalar::{diag, half, lit, two, Real};
use crate::tolerances;
use core::ops::Mul;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Four-vector of contravariant components `(p⁰, p¹, p², p³)`.
pub type FourVector<T> = Vec4<T>;

/// The Minkowski metric as a matrix, diag(+1, −1, −1, −1).
pub fn eta<T: Real>() -> Mat4<T> {
    let mut m = Mat4::zero();
    m.0[0][0] = T::one();
    for i in 1..4 {
        m.0[i][i] = -T::one();
    }
    m
}

/// Minkowski pairing `η(a, b) = a⁰b⁰ − a·b`.
pub fn minkowski_dot<T: Real>(a: &FourVector<T>, b: &FourVector<T>) -> T {
    a.0[0] * b.0[0] - a.0[1] * b.0[1] - a.0[2] * b.0[2] - a.0[3] * b.0[3]
}

/// A three-velocity with the invariant |v| < 1 enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Velocity3<T> {
    v: Vec3<T>,
}

impl<T: Real> Velocity3<T> {
    /// Validates |v| < 1 and all components finite.
    pub fn new(v: Vec3<T>) -> Result<Self> {
        for &c in &v.0 {
            if !c.is_finite() {
                return Err(Error::NonFinite { value: diag(c) });
            }
        }
        let s = v.norm();
        if s >= T::one() {
            return Err(Error::Superluminal { speed: diag(s) });
        }
        Ok(Velocity3 { v })
    }

    /// Convenience constructor from components.
    pub fn from_components(x: T, y: T, z: T) -> Result<Self> {
        Self::new(Vec3([x, y, z]))
    }

    pub fn zero() -> Self {
        Velocity3 { v: Vec3::zero() }
    }

    /// Internal constructor for values already known to be subluminal.
    pub(crate) fn new_unchecked(v: Vec3<T>) -> Self {
        Velocity3 { v }
    }

    pub fn components(&self) -> Vec3<T> {
        self.v
    }

    pub fn speed(&self) -> T {
        self.v.norm()
    }

    /// Lorentz factor γ = (1 − v²)^{−1/2}.
    pub fn gamma(&self) -> T {
        (T::one() - self.v.norm_squared()).sqrt().recip()
    }
}

/// A 4×4 Lorentz transformation matrix.
///
/// The defining invariant ΛᵀηΛ = η is preserved by every constructor in this
/// crate to machine accuracy; [`Self::eta_defect`] measures it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix<T>(pub Mat4<T>);

impl<T: Real> LorentzMatrix<T> {
    pub fn identity() -> Self {
        LorentzMatrix(Mat4::identity())
    }

    pub fn apply(&self, p: &FourVector<T>) -> FourVector<T> {
        self.0 * *p
    }

    /// Exact group inverse `Λ⁻¹ = η Λᵀ η`.
    ///
    /// This is the inverse of the underlying exact Lorentz map, so it does not
    /// amplify the (machine-level) η-defect of the stored matrix.
    pub fn inverse(&self) -> Self {
        LorentzMatrix(eta::<T>() * self.0.transpose() * eta::<T>())
    }

    /// `max |ΛᵀηΛ − η|`.
    pub fn eta_defect(&self) -> T {
        (self.0.transpose() * eta::<T>() * self.0).max_abs_diff(&eta())
    }
}

impl<T: Real> Mul for LorentzMatrix<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        LorentzMatrix(self.0 * o.0)
    }
}

/// A 3×3 rotation matrix (orthogonality kept to machine accuracy, checked by
/// consumers via [`Self::orthogonality_defect`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3<T>(pub Mat3<T>);

impl<T: Real> Rotation3<T> {
    pub fn identity() -> Self {
        Rotation3(Mat3::identity())
    }

    pub fn apply(&self, v: &Vec3<T>) -> Vec3<T> {
        self.0 * *v
    }

    pub fn orthogonality_defect(&self) -> T {
        self.0.orthogonality_defect()
    }

    /// Rotation angle of the relative rotation `R₁R₂ᵀ`, a basis-free distance
    /// on SO(3) in radians.
    ///
    /// Computed as atan2(sin, cos) from the antisymmetric part and the trace;
    /// unlike the plain arccos form this keeps full relative precision for
    /// small angles (arccos cannot resolve below ≈ 1e−8 in f64).
    pub fn angle_between(&self, other: &Self) -> T {
        let rel = self.0 * other.0.transpose();
        let c = (rel.trace() - T::one()) * half::<T>();
        let w = Vec3([
            rel.0[2][1] - rel.0[1][2],
            rel.0[0][2] - rel.0[2][0],
            rel.0[1][0] - rel.0[0][1],
        ]);
        let s = w.norm() * half::<T>();
        s.atan2(c)
    }
}

/// Angle-axis form of a rotation: angle in `[0, π]`, unit axis.
///
/// The identity rotation reports axis ẑ by convention. For angle = π the axis
/// sign is fixed by the largest-diagonal extraction in
/// [`rotation_to_angle_axis`] (n and −n are equivalent there).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleAxis<T> {
    pub angle: T,
    pub axis: Vec3<T>,
}

/// The standard symmetric pure boost L(v).
pub fn pure_boost<T: Real>(v: &Velocity3<T>) -> LorentzMatrix<T> {
    let g = v.gamma();
    let w = v.components();
    // (γ − 1)/v² = γ²/(γ + 1), finite as v → 0.
    let f = g * g / (g + T::one());
    let mut m = Mat4::zero();
    m.0[0][0] = g;
    for i in 0..3 {
        m.0[0][i + 1] = g * w.0[i];
        m.0[i + 1][0] = g * w.0[i];
        for j in 0..3 {
            let d = if i == j { T::one() } else { T::zero() };
            m.0[i + 1][j + 1] = d + f * w.0[i] * w.0[j];
        }
    }
    LorentzMatrix(m)
}

/// Checks `p` is future-timelike and on the shell `η(p,p) = m²` within `tol`.
pub(crate) fn check_on_shell<T: Real>(p: &FourVector<T>, m: T, tol: f64) -> Result<()> {
    if !(m > T::zero()) {
        return Err(Error::NonPositiveMass { mass: diag(m) });
    }
    if !p.is_finite() {
        return Err(Error::NonFinite {
            value: diag(p.0.iter().copied().find(|x| !x.is_finite()).unwrap_or(T::nan())),
        });
    }
    if !(p.time() > T::zero()) {
        return Err(Error::NotFutureTimelike {
            time_component: diag(p.time()),
        });
    }
    let s = minkowski_dot(p, p);
    if (s - m * m).abs() > lit(tol) {
        return Err(Error::OffShell {
            invariant: diag(s),
            mass_squared: diag(m * m),
        });
    }
    Ok(())
}

/// The pure boost taking the rest momentum `(m, 0, 0, 0)` to `p`.
///
/// Uses [`tolerances::DEFAULT_INVARIANT_TOL`] for the on-shell check.
pub fn boost_from_momentum<T: Real>(p: &FourVector<T>, m: T) -> Result<LorentzMatrix<T>> {
    boost_from_momentum_with_tol(p, m, tolerances::DEFAULT_INVARIANT_TOL)
}

/// [`boost_from_momentum`] with an explicit on-shell tolerance.
pub fn boost_from_momentum_with_tol<T: Real>(
    p: &FourVector<T>,
    m: T,
    tol: f64,
) -> Result<LorentzMatrix<T>> {
    check_on_shell(p, m, tol)?;
    // On shell with p⁰ > 0 the ratio |p|/p⁰ is strictly below 1.
    let v = Velocity3::new_unchecked(p.spatial().scale(p.time().recip()));
    Ok(pure_boost(&v))
}

/// Velocity of a future-timelike four-vector, `v = p⃗ / p⁰`. Validates the
/// input (finite, p⁰ > 0, timelike), which guarantees |v| < 1.
pub fn velocity_of_momentum<T: Real>(p: &FourVector<T>) -> Result<Velocity3<T>> {
    if !p.is_finite() {
        return Err(Error::NonFinite { value: f64::NAN });
    }
    if !(p.time() > T::zero()) || !(minkowski_dot(p, p) > T::zero()) {
        return Err(Error::NotFutureTimelike {
            time_component: diag(p.time()),
        });
    }
    Ok(Velocity3::new_unchecked(p.spatial().scale(p.time().recip())))
}

/// Relativistic composition of two parallel speeds:
/// `(v₁ + v₂) / (1 + v₁v₂)`. Speeds are signed; |v| < 1 each.
pub fn velocity_add_collinear<T: Real>(v1: T, v2: T) -> Result<T> {
    for v in [v1, v2] {
        if !v.is_finite() {
            return Err(Error::NonFinite { value: diag(v) });
        }
        if v.abs() >= T::one() {
            return Err(Error::Superluminal { speed: diag(v.abs()) });
        }
    }
    Ok((v1 + v2) / (T::one() + v1 * v2))
}

/// Velocity of the composite `L(v₂)L(v₁)` applied to the rest momentum — the
/// boost pair is applied in the order written, second boost outermost.
///
/// Closed form (γ₂ = γ(v₂)):
/// v₁₂ = [ (1 + γ₂/(1+γ₂) · v₁·v₂) v₂ + v₁/γ₂ ] / (1 + v₁·v₂).
pub fn velocity_add_general<T: Real>(v1: &Velocity3<T>, v2: &Velocity3<T>) -> Velocity3<T> {
    let a = v1.components();
    let b = v2.components();
    let g2 = v2.gamma();
    let dot = a.dot(&b);
    let pref = (T::one() + dot).recip();
    let coeff_b = T::one() + g2 / (T::one() + g2) * dot;
    Velocity3::new_unchecked((b.scale(coeff_b) + a.scale(g2.recip())).scale(pref))
}

/// Extracts the spatial rotation block of a Lorentz matrix that should be a
/// pure rotation, verifying the time row/column are `(1, 0, 0, 0)` to `tol`.
fn rotation_block<T: Real>(w: &LorentzMatrix<T>, tol: f64) -> Result<Rotation3<T>> {
    let m = &w.0;
    let mut defect = (m.0[0][0] - T::one()).abs();
    for i in 1..4 {
        defect = defect.max(m.0[0][i].abs()).max(m.0[i][0].abs());
    }
    let r = Rotation3(m.spatial_block());
    defect = defect.max(r.orthogonality_defect());
    if defect > lit(tol) {
        return Err(Error::NotARotation { defect: diag(defect) });
    }
    Ok(r)
}

/// The Wigner rotation `W(Λ, p) = L(Λp)⁻¹ Λ L(p)` for on-shell `p`.
///
/// `W` fixes the rest momentum, so it is (the embedding of) a spatial
/// rotation; the returned block is checked for consistency with
/// [`tolerances::DEFAULT_INVARIANT_TOL`].
pub fn wigner_rotation<T: Real>(
    lambda: &LorentzMatrix<T>,
    p: &FourVector<T>,
    m: T,
) -> Result<Rotation3<T>> {
    wigner_rotation_with_tol(lambda, p, m, tolerances::DEFAULT_INVARIANT_TOL)
}

/// [`wigner_rotation`] with an explicit consistency tolerance.
pub fn wigner_rotation_with_tol<T: Real>(
    lambda: &LorentzMatrix<T>,
    p: &FourVector<T>,
    m: T,
    tol: f64,
) -> Result<Rotation3<T>> {
    let lp = boost_from_momentum_with_tol(p, m, tol)?;
    let q = lambda.apply(p);
    let lq = boost_from_momentum_with_tol(&q, m, tol)?;
    let w = lq.inverse() * *lambda * lp;
    rotation_block(&w, tol)
}

/// The Thomas–Wigner rotation of two successive pure boosts,
/// `R(v₁, v₂) = L(v₁₂)⁻¹ L(v₂) L(v₁)` (first boost v₁, then v₂).
///
/// Collinear inputs give the identity.
pub fn twr_of_two_boosts<T: Real>(v1: &Velocity3<T>, v2: &Velocity3<T>) -> Result<Rotation3<T>> {
    let v12 = velocity_add_general(v1, v2);
    let w = pure_boost(&v12).inverse() * pure_boost(v2) * pure_boost(v1);
    rotation_block(&w, tolerances::DEFAULT_INVARIANT_TOL)
}

/// Decomposes a rotation matrix into angle-axis form.
///
/// Branches:
/// - generic angle: axis from the antisymmetric part;
/// - angle ≈ 0: axis defaults to ẑ (identity convention);
/// - angle ≈ π: axis from the largest diagonal entry of (R + I)/2, with the
///   signs of the remaining components taken from that row (n ↔ −n being
///   equivalent at π, the component with the largest magnitude is made
///   positive).
pub fn rotation_to_angle_axis<T: Real>(r: &Rotation3<T>) -> Result<AngleAxis<T>> {
    let defect = r.orthogonality_defect();
    // Epsilon floor: a rotation assembled in f32 carries ~ε of roundoff,
    // which must not trip a gate meant for genuinely non-orthogonal input.
    let gate = lit::<T>(tolerances::DEFAULT_INVARIANT_TOL).max(T::epsilon() * lit::<T>(64.0));
    if defect > gate {
        return Err(Error::NotARotation { defect: diag(defect) });
    }
    let m = &r.0;
    let c = ((m.trace() - T::one()) * half::<T>())
        .min(T::one())
        .max(-T::one());
    // Twice the sine of the angle times the axis:
    let w = Vec3([
        m.0[2][1] - m.0[1][2],
        m.0[0][2] - m.0[2][0],
        m.0[1][0] - m.0[0][1],
    ]);
    let wn = w.norm();
    // atan2 of (sin, cos) stays well-conditioned at both ends of [0, π],
    // unlike acos of the trace.
    let angle = (wn * half::<T>()).atan2(c);
    let axis = if c > -half::<T>() {
        if wn > lit(1e-12) {
            w.scale(wn.recip())
        } else {
            // Identity within roundoff; fixed axis convention.
            Vec3::basis(2)
        }
    } else {
        // Approaching the half turn the antisymmetric part shrinks like
        // sin(angle), so extract the axis from the symmetric part instead:
        // (sym(R) + I)/2 − ((1 + c)/2) I = ((1 − c)/2) nnᵀ exactly, and the
        // prefactor is O(1) here. Symmetrizing first matters — R itself
        // still carries the O(sin) antisymmetric part.
        let mut q = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                q.0[i][j] = if i == j {
                    (m.0[i][i] - c) * half::<T>()
                } else {
                    (m.0[i][j] + m.0[j][i]) * half::<T>() * half::<T>()
                };
            }
        }
        let mut k = 0;
        for i in 1..3 {
            if q.0[i][i] > q.0[k][k] {
                k = i;
            }
        }
        let n = Vec3(q.0[k]).normalized().unwrap_or(Vec3::basis(2));
        if wn > T::epsilon() * lit::<T>(32.0) {
            // Short of an exact half turn ±n are distinct rotations; the
            // true axis aligns with the antisymmetric part.
            if n.dot(&w) < T::zero() {
                -n
            } else {
                n
            }
        } else {
            // Exact half turn: ±n are the same rotation; pick the sign with
            // the largest-magnitude component positive for determinism.
            let mut l = 0;
            for i in 1..3 {
                if n.0[i].abs() > n.0[l].abs() {
                    l = i;
                }
            }
            if n.0[l] < T::zero() {
                -n
            } else {
                n
            }
        }
    };
    Ok(AngleAxis { angle, axis })
}

/// Reduces an angle-axis pair to the canonical range: angle in `[0, π]` with
/// the axis flipped when the wrapped angle falls in `(π, 2π)`. Useful when
/// comparing an accumulated (unwrapped) precession angle against the
/// angle-axis form of a rotation matrix, which cannot distinguish winding.
pub fn canonical_angle_axis<T: Real>(aa: &AngleAxis<T>) -> AngleAxis<T> {
    let tau = T::PI() + T::PI();
    let mut angle = aa.angle % tau;
    if angle < T::zero() {
        angle = angle + tau;
    }
    let mut axis = aa.axis;
    if angle > T::PI() {
        angle = tau - angle;
        axis = -axis;
    }
    AngleAxis { angle, axis }
}

/// Rodrigues form: rotation by `angle` about the unit vector `axis`.
pub fn rotation_from_angle_axis<T: Real>(aa: &AngleAxis<T>) -> Rotation3<T> {
    let n = aa.axis;
    let c = aa.angle.cos();
    let s = aa.angle.sin();
    let k = Mat3([
        [T::zero(), -n.0[2], n.0[1]],
        [n.0[2], T::zero(), -n.0[0]],
        [-n.0[1], n.0[0], T::zero()],
    ]);
    let mut nnt = Mat3::zero();
    for i in 0..3 {
        for j in 0..3 {
            nnt.0[i][j] = n.0[i] * n.0[j];
        }
    }
    Rotation3(Mat3::identity().scale(c) + nnt.scale(T::one() - c) + k.scale(s))
}

/// The Pauli matrices (σ₁, σ₂, σ₃).
pub fn pauli<T: Real>() -> [CMat2<T>; 3] {
    let o = T::one();
    let z = T::zero();
    let c = Complex::new;
    [
        CMat2([[c(z, z), c(o, z)], [c(o, z), c(z, z)]]),
        CMat2([[c(z, z), c(z, -o)], [c(z, o), c(z, z)]]),
        CMat2([[c(o, z), c(z, z)], [c(z, z), c(-o, z)]]),
    ]
}

/// The su(2) generators `J_a = −(i/2) σ_a`, orthonormal under
/// `h(X, Y) = −2 tr(XY)` and satisfying `[J_i, J_k] = ε_{ikj} J_j`.
pub fn su2_generators<T: Real>() -> [CMat2<T>; 3] {
    let s = pauli::<T>();
    let mih = Complex::new(T::zero(), -half::<T>());
    [s[0].scale(mih), s[1].scale(mih), s[2].scale(mih)]
}

/// The SU(2) element `exp(−i(angle/2) n·σ) = cos(angle/2) − i sin(angle/2) n·σ`,
/// covering the rotation by `angle` about `n`.
pub fn su2_from_angle_axis<T: Real>(aa: &AngleAxis<T>) -> CMat2<T> {
    let c = (aa.angle * half::<T>()).cos();
    let s = (aa.angle * half::<T>()).sin();
    let n = aa.axis;
    let sig = pauli::<T>();
    let mut u = CMat2::identity().scale_re(c);
    let mis = Complex::new(T::zero(), -s);
    for a in 0..3 {
        u = u + sig[a].scale(mis * Complex::new(n.0[a], T::zero()));
    }
    u
}

/// The covering map SU(2) → SO(3): `R_ab` defined by `U J_b U† = Σ_a R_ab J_a`,
/// extracted through the invariant pairing, `R_ab = −2 tr(J_a U J_b U†)`.
///
/// `U` and `−U` map to the same rotation.
pub fn su2_to_so3<T: Real>(u: &CMat2<T>) -> Rotation3<T> {
    let j = su2_generators::<T>();
    let ud = u.adjoint();
    let mut r = Mat3::zero();
    for b in 0..3 {
        let conj = *u * j[b] * ud;
        for a in 0..3 {
            r.0[a][b] = -two::<T>() * (j[a] * conj).trace().re;
        }
    }
    Rotation3(r)
}

/// Unit quaternion `(w, x, y, z)` of a rotation matrix (Shepperd's method).
/// Sign is unconstrained: `q` and `−q` describe the same rotation.
pub(crate) fn quaternion_from_rotation<T: Real>(r: &Mat3<T>) -> [T; 4] {
    let m = &r.0;
    let tr = m[0][0] + m[1][1] + m[2][2];
    let quarter = half::<T>() * half::<T>();
    let (w, x, y, z);
    if tr > T::zero() {
        let s = (tr + T::one()).sqrt() * two::<T>();
        w = quarter * s;
        x = (m[2][1] - m[1][2]) / s;
        y = (m[0][2] - m[2][0]) / s;
        z = (m[1][0] - m[0][1]) / s;
    } else if m[0][0] >= m[1][1] && m[0][0] >= m[2][2] {
        let s = (T::one() + m[0][0] - m[1][1] - m[2][2]).sqrt() * two::<T>();
        w = (m[2][1] - m[1][2]) / s;
        x = quarter * s;
        y = (m[0][1] + m[1][0]) / s;
        z = (m[0][2] + m[2][0]) / s;
    } else if m[1][1] >= m[2][2] {
        let s = (T::one() + m[1][1] - m[0][0] - m[2][2]).sqrt() * two::<T>();
        w = (m[0][2] - m[2][0]) / s;
        x = (m[0][1] + m[1][0]) / s;
        y = quarter * s;
        z = (m[1][2] + m[2][1]) / s;
    } else {
        let s = (T::one() + m[2][2] - m[0][0] - m[1][1]).sqrt() * two::<T>();
        w = (m[1][0] - m[0][1]) / s;
        x = (m[0][2] + m[2][0]) / s;
        y = (m[1][2] + m[2][1]) / s;
        z = quarter * s;
    }
    let n = (w * w + x * x + y * y + z * z).sqrt();
    [w / n, x / n, y / n, z / n]
}

/// SU(2) element of a unit quaternion `(w, x, y, z)`:
/// `U = w − i(x σ₁ + y σ₂ + z σ₃)`.
pub(crate) fn su2_from_quaternion<T: Real>(q: &[T; 4]) -> CMat2<T> {
    let c = Complex::new;
    CMat2([
        [c(q[0], -q[3]), c(-q[2], -q[1])],
        [c(q[2], -q[1]), c(q[0], q[3])],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::lit;

    fn vel(x: f64, y: f64, z: f64) -> Velocity3<f64> {
        Velocity3::from_components(x, y, z).unwrap()
    }

    #[test]
    fn pure_boost_spot_values() {
        // v = 0.6 x̂: γ = 1.25, γv = 0.75, spatial xx entry = 1 + (γ−1) = 1.25.
        let l = pure_boost(&vel(0.6, 0.0, 0.0));
        assert!((l.0 .0[0][0] - 1.25).abs() < 1e-15);
        assert!((l.0 .0[0][1] - 0.75).abs() < 1e-15);
        assert!((l.0 .0[1][1] - 1.25).abs() < 1e-15);
        assert_eq!(l.0 .0[2][3], 0.0);
        assert!((l.0 .0[2][2] - 1.0).abs() < 1e-15);
        assert!(l.eta_defect() < 1e-15);
    }

    #[test]
    fn boost_inverse_is_opposite_velocity() {
        let v = vel(0.3, -0.5, 0.2);
        let a = pure_boost(&v).inverse();
        let b = pure_boost(&Velocity3::new(-v.components()).unwrap());
        assert!(a.0.max_abs_diff(&b.0) < 1e-15);
    }

    #[test]
    fn zero_velocity_boost_is_identity() {
        let l = pure_boost(&Velocity3::<f64>::zero());
        assert!(l.0.max_abs_diff(&Mat4::identity()) == 0.0);
    }

    #[test]
    fn superluminal_rejected() {
        assert!(matches!(
            Velocity3::from_components(0.8, 0.8, 0.0),
            Err(Error::Superluminal { .. })
        ));
        assert!(matches!(
            velocity_add_collinear(1.0, 0.5),
            Err(Error::Superluminal { .. })
        ));
    }

    #[test]
    fn collinear_composition_frozen_value() {
        // 0.9 ⊕ 0.9 = 1.8/1.81.
        let v = velocity_add_collinear(0.9f64, 0.9).unwrap();
        assert!((v - 0.99447513812154698).abs() < 1e-15);
        // Opposite speeds cancel.
        assert_eq!(velocity_add_collinear(0.7, -0.7).unwrap(), 0.0);
    }

    #[test]
    fn general_composition_matches_composed_boost() {
        let v1 = vel(0.6, 0.0, 0.0);
        let v2 = vel(0.0, 0.6, 0.0);
        let v12 = velocity_add_general(&v1, &v2);
        // Velocity of L(v₂)L(v₁) acting on rest: (0.48, 0.6, 0).
        assert!((v12.components().0[0] - 0.48).abs() < 1e-15);
        assert!((v12.components().0[1] - 0.60).abs() < 1e-15);
        assert_eq!(v12.components().0[2], 0.0);

        let rest = Vec4::new(1.0, 0.0, 0.0, 0.0);
        let p = (pure_boost(&v2) * pure_boost(&v1)).apply(&rest);
        let direct = p.spatial().scale(1.0 / p.time());
        assert!(v12.components().max_abs_diff(&direct) < 1e-15);
    }

    #[test]
    fn twr_frozen_angle_and_axis() {
        // Perpendicular 0.6/0.6 boosts: cos α = 40/41, α = atan(9/40), axis +ẑ.
        let r = twr_of_two_boosts(&vel(0.6, 0.0, 0.0), &vel(0.0, 0.6, 0.0)).unwrap();
        let aa = rotation_to_angle_axis(&r).unwrap();
        assert!((aa.angle - 0.2213144423477913).abs() < 1e-15);
        assert!(aa.axis.max_abs_diff(&Vec3::basis(2)) < 1e-12);
        // The rotation leaves ẑ fixed and turns x̂ toward ŷ.
        assert!((r.0 .0[0][0] - 40.0 / 41.0).abs() < 1e-12);
        assert!((r.0 .0[1][0] - 9.0 / 41.0).abs() < 1e-12);
    }

    #[test]
    fn twr_collinear_is_identity() {
        let r = twr_of_two_boosts(&vel(0.5, 0.0, 0.0), &vel(0.9, 0.0, 0.0)).unwrap();
        assert!(r.0.max_abs_diff(&Mat3::identity()) < tolerances::COLLINEAR_IDENTITY);
    }

    #[test]
    fn wigner_rotation_matches_twr() {
        // Λ = L(v₂) acting on p = L(v₁)·rest reproduces R(v₁, v₂).
        let v1 = vel(0.6, 0.0, 0.0);
        let v2 = vel(0.0, 0.6, 0.0);
        let p = pure_boost(&v1).apply(&Vec4::new(1.0, 0.0, 0.0, 0.0));
        assert!((p.0[0] - 1.25).abs() < 1e-15 && (p.0[1] - 0.75).abs() < 1e-15);
        let w = wigner_rotation(&pure_boost(&v2), &p, 1.0).unwrap();
        let r = twr_of_two_boosts(&v1, &v2).unwrap();
        assert!(w.0.max_abs_diff(&r.0) < 1e-13);
    }

    #[test]
    fn angle_axis_roundtrip_generic() {
        let aa = AngleAxis {
            angle: 1.234f64,
            axis: Vec3([2.0, -1.0, 0.5]).normalized().unwrap(),
        };
        let r = rotation_from_angle_axis(&aa);
        let back = rotation_to_angle_axis(&r).unwrap();
        assert!((back.angle - aa.angle).abs() < 1e-14);
        assert!(back.axis.max_abs_diff(&aa.axis) < 1e-13);
    }

    #[test]
    fn angle_axis_pi_branch() {
        // Rotation by π about x̂: diag(1, −1, −1).
        let r = Rotation3(Mat3::from_rows(
            [1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, -1.0],
        ));
        let aa = rotation_to_angle_axis(&r).unwrap();
        assert!((aa.angle - core::f64::consts::PI).abs() < 1e-15);
        assert!(aa.axis.max_abs_diff(&Vec3::basis(0)) < 1e-15);
        // Oblique π-rotation round trip (compare as rotations; n ↔ −n at π).
        let n = Vec3([1.0, 2.0, -2.0]).normalized().unwrap();
        let src = rotation_from_angle_axis(&AngleAxis {
            angle: core::f64::consts::PI,
            axis: n,
        });
        let back = rotation_to_angle_axis(&src).unwrap();
        let rebuilt = rotation_from_angle_axis(&back);
        assert!(rebuilt.0.max_abs_diff(&src.0) < 1e-14);
    }

    #[test]
    fn canonical_reduction_wraps_and_flips() {
        // 3π/2 about ẑ is π/2 about −ẑ.
        let c = canonical_angle_axis(&AngleAxis {
            angle: 3.0 * core::f64::consts::FRAC_PI_2,
            axis: Vec3::basis(2),
        });
        assert!((c.angle - core::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(c.axis.max_abs_diff(&-Vec3::basis(2)) < 1e-15);
        // 2π + 0.3 wraps to 0.3 with the axis kept.
        let c = canonical_angle_axis(&AngleAxis {
            angle: 2.0 * core::f64::consts::PI + 0.3,
            axis: Vec3::basis(0),
        });
        assert!((c.angle - 0.3).abs() < 1e-14);
        assert!(c.axis.max_abs_diff(&Vec3::basis(0)) < 1e-15);
        // Negative angles wrap positively: −0.4 about n is 0.4 about −n.
        let c = canonical_angle_axis(&AngleAxis {
            angle: -0.4f64,
            axis: Vec3::basis(1),
        });
        assert!((c.angle - 0.4).abs() < 1e-15);
        assert!(c.axis.max_abs_diff(&-Vec3::basis(1)) < 1e-15);
    }

    #[test]
    fn angle_axis_identity_convention() {
        let aa = rotation_to_angle_axis(&Rotation3::<f64>::identity()).unwrap();
        assert_eq!(aa.angle, 0.0);
        assert_eq!(aa.axis.0, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn su2_generator_algebra() {
        let j = su2_generators::<f64>();
        // Orthonormal under h(X,Y) = −2 tr(XY).
        for a in 0..3 {
            for b in 0..3 {
                let h = -2.0 * (j[a] * j[b]).trace().re;
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((h - want).abs() < 1e-15);
            }
        }
        // [J₁, J₂] = J₃ and cyclic.
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            assert!(j[a].commutator(&j[b]).max_abs_diff(&j[c]) < 1e-15);
        }
    }

    #[test]
    fn su2_covers_rodrigues() {
        let aa = AngleAxis {
            angle: 0.7,
            axis: Vec3([0.3, -0.4, 0.5]).normalized().unwrap(),
        };
        let u = su2_from_angle_axis(&aa);
        assert!(u.unitarity_defect() < 1e-15);
        assert!((u.det() - Complex::new(1.0, 0.0)).norm() < 1e-15);
        let r = su2_to_so3(&u);
        let rod = rotation_from_angle_axis(&aa);
        assert!(r.0.max_abs_diff(&rod.0) < 1e-14);
        // −U covers the same rotation.
        let rm = su2_to_so3(&(-u));
        assert!(rm.0.max_abs_diff(&rod.0) < 1e-14);
    }

    #[test]
    fn su2_spot_value_quarter_turn_about_y() {
        // exp(−i(π/4)σ₂) = [[cos π/4, −sin π/4], [sin π/4, cos π/4]].
        let aa = AngleAxis {
            angle: core::f64::consts::FRAC_PI_2,
            axis: Vec3::basis(1),
        };
        let u = su2_from_angle_axis(&aa);
        let c = core::f64::consts::FRAC_1_SQRT_2;
        assert!((u.0[0][0] - Complex::new(c, 0.0)).norm() < 1e-15);
        assert!((u.0[0][1] - Complex::new(-c, 0.0)).norm() < 1e-15);
        assert!((u.0[1][0] - Complex::new(c, 0.0)).norm() < 1e-15);
        assert!((u.0[1][1] - Complex::new(c, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn quaternion_roundtrip_all_branches() {
        for aa in [
            AngleAxis { angle: 0.3, axis: Vec3([1.0, 1.0, 1.0]).normalized().unwrap() },
            AngleAxis { angle: 3.0, axis: Vec3::basis(0) },
            AngleAxis { angle: 3.0, axis: Vec3::basis(1) },
            AngleAxis { angle: 3.0, axis: Vec3::basis(2) },
            AngleAxis { angle: 3.1, axis: Vec3([-0.5, 0.7, 0.2]).normalized().unwrap() },
        ] {
            let r = rotation_from_angle_axis(&aa);
            let q = quaternion_from_rotation(&r.0);
            let u = su2_from_quaternion(&q);
            let back = su2_to_so3(&u);
            assert!(back.0.max_abs_diff(&r.0) < 1e-14);
        }
    }

    #[test]
    fn generic_scalar_f32_smoke() {
        let v = Velocity3::<f32>::from_components(lit(0.6), 0.0, 0.0).unwrap();
        let l = pure_boost(&v);
        assert!(l.eta_defect() < 1e-5);
        let aa = AngleAxis {
            angle: 0.5f32,
            axis: Vec3::basis(1),
        };
        let r = su2_to_so3(&su2_from_angle_axis(&aa));
        assert!(r.orthogonality_defect() < 1e-5);
    }
}
