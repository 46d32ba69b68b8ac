//! Frame (so(3)) and spinor (su(2)) connection coefficients on the shell.
//!
//! With the orthonormal frame e₁ = (E/m)∂_ρ, e₂ = (1/ρ)∂_θ,
//! e₃ = (1/(ρ sinθ))∂_φ, covariant differentiation acts on frame components
//! through antisymmetric coefficient matrices, one per chart coordinate:
//!
//!   ∇_{∂_i} e_b = (ω_i)^a_b e_a,
//!
//! so a frame-component vector X^a transported along z(τ) obeys
//! dX^a/dτ = −(ω_i)^a_b żⁱ X^b and the holonomy of a loop is the
//! path-ordered product of exp(−ω_i Δzⁱ) factors.
//!
//! The spinor connection is the image of ω under the Lie-algebra isomorphism
//! φ: so(3) → su(2) fixed by the generators J_a = −(i/2)σ_a; spinor transport
//! runs the same equation with 2×2 anti-Hermitian coefficients and its
//! holonomy covers the frame holonomy through the map SU(2) → SO(3).
//!
//! Nonzero coefficients (E = √(m² + ρ²)):
//!
//!   ω_θ: (ω_θ)¹₂ = −E/m
//!   ω_φ: (ω_φ)¹₃ = −(E/m) sinθ,   (ω_φ)²₃ = −cosθ
//!   ω_ρ = 0,
//!
//! with antisymmetric completion. The curvature two-form
//! Ω = dω + ω ∧ ω has coefficient slots (ρθ), (ρφ), (θφ):
//!
//!   Ω_{ρθ}: (Ω)¹₂ = −ρ/(E m)
//!   Ω_{ρφ}: (Ω)¹₃ = −ρ sinθ/(E m)
//!   Ω_{θφ}: (Ω)²₃ = −ρ² sinθ/m².

use crate::error::{Error, Result};
use crate::linalg::{CMat2, Mat3, Vec3};
use crate::scalar::{diag, half, lit, Real};
use crate::shell::{ChartPoint, ShellGeometry};
use crate::tolerances;
use num_complex::Complex;

/// so(3) hat map: `hat(c) x = c × x`, i.e. `hat(c)_{ij} = −ε_{ijk} c_k`.
pub fn so3_hat<T: Real>(c: &Vec3<T>) -> Mat3<T> {
    Mat3([
        [T::zero(), -c.0[2], c.0[1]],
        [c.0[2], T::zero(), -c.0[0]],
        [-c.0[1], c.0[0], T::zero()],
    ])
}

/// Inverse of [`so3_hat`] for an antisymmetric matrix (antisymmetry is the
/// caller's responsibility; the antisymmetric part is used).
pub fn so3_unhat<T: Real>(a: &Mat3<T>) -> Vec3<T> {
    Vec3([
        (a.0[2][1] - a.0[1][2]) * half::<T>(),
        (a.0[0][2] - a.0[2][0]) * half::<T>(),
        (a.0[1][0] - a.0[0][1]) * half::<T>(),
    ])
}

/// The Lie-algebra isomorphism φ: so(3) → su(2), `hat(c) ↦ Σ c_a J_a` with
/// `J_a = −(i/2)σ_a`. Fails if the input is not antisymmetric (defect above
/// [`tolerances::ANTISYMMETRY`] relative to the matrix scale).
pub fn phi_iso<T: Real>(a: &Mat3<T>) -> Result<CMat2<T>> {
    let defect = a.antisymmetry_defect();
    let scale = T::one().max(a.max_abs());
    if defect > lit::<T>(tolerances::ANTISYMMETRY) * scale {
        return Err(Error::NotAntisymmetric {
            defect: diag(defect),
        });
    }
    let c = so3_unhat(a);
    Ok(su2_from_coefficients(&c))
}

/// Inverse of [`phi_iso`]: reads the coefficient vector off an su(2) element
/// `M = Σ c_a J_a` and returns `hat(c)`.
pub fn phi_iso_inverse<T: Real>(m: &CMat2<T>) -> Mat3<T> {
    so3_hat(&su2_coefficients(m))
}

/// `Σ c_a J_a` with `J_a = −(i/2)σ_a`:
/// `[[−i c₃/2, (−c₂ − i c₁)/2], [(c₂ − i c₁)/2, i c₃/2]]`.
pub fn su2_from_coefficients<T: Real>(c: &Vec3<T>) -> CMat2<T> {
    let h = half::<T>();
    CMat2([
        [
            Complex::new(T::zero(), -c.0[2] * h),
            Complex::new(-c.0[1] * h, -c.0[0] * h),
        ],
        [
            Complex::new(c.0[1] * h, -c.0[0] * h),
            Complex::new(T::zero(), c.0[2] * h),
        ],
    ])
}

/// Coefficient vector of an su(2) element in the `J_a` basis (the
/// anti-Hermitian traceless part is read off).
pub fn su2_coefficients<T: Real>(m: &CMat2<T>) -> Vec3<T> {
    let two = lit::<T>(2.0);
    Vec3([
        -two * m.0[0][1].im,
        -two * m.0[0][1].re,
        -two * m.0[0][0].im,
    ])
}

/// Exponential of an su(2) element `M = Σ c_a J_a`: with φ = |c|/2,
/// `exp(M) = cos φ · I + sinc(φ) · M` (since `M² = −φ² I`).
pub fn su2_exp<T: Real>(m: &CMat2<T>) -> CMat2<T> {
    let c = su2_coefficients(m);
    let phi = c.norm() * half::<T>();
    let sinc = if phi < lit(1e-8) {
        // sin(φ)/φ = 1 − φ²/6 + O(φ⁴); the φ⁴ term is below roundoff here.
        T::one() - phi * phi / lit::<T>(6.0)
    } else {
        phi.sin() / phi
    };
    CMat2::identity().scale_re(phi.cos()) + m.scale_re(sinc)
}

/// Frame connection coefficients `(ω_ρ, ω_θ, ω_φ)` at a chart point, each an
/// antisymmetric 3×3 matrix acting on frame indices.
pub fn so3_connection<T: Real>(geom: &ShellGeometry<T>, z: &ChartPoint<T>) -> [Mat3<T>; 3] {
    let em = geom.energy(z.rho) / geom.mass();
    let (st, ct) = (z.theta.sin(), z.theta.cos());
    let mut w_theta = Mat3::zero();
    w_theta.0[0][1] = -em;
    w_theta.0[1][0] = em;
    let mut w_phi = Mat3::zero();
    w_phi.0[0][2] = -em * st;
    w_phi.0[2][0] = em * st;
    w_phi.0[1][2] = -ct;
    w_phi.0[2][1] = ct;
    [Mat3::zero(), w_theta, w_phi]
}

/// Spinor connection coefficients: the image of [`so3_connection`] under
/// φ, computed directly,
/// `ω^s_θ = −(i/2)(E/m)σ₃`, `ω^s_φ = (i/2)(E/m) sinθ σ₂ − (i/2) cosθ σ₁`.
pub fn spinor_connection<T: Real>(geom: &ShellGeometry<T>, z: &ChartPoint<T>) -> [CMat2<T>; 3] {
    let em = geom.energy(z.rho) / geom.mass();
    let (st, ct) = (z.theta.sin(), z.theta.cos());
    [
        CMat2::zero(),
        su2_from_coefficients(&Vec3([T::zero(), T::zero(), em])),
        su2_from_coefficients(&Vec3([ct, -em * st, T::zero()])),
    ]
}

/// Frame curvature coefficients `(Ω_{ρθ}, Ω_{ρφ}, Ω_{θφ})` of the two-form
/// `Ω = dω + ω ∧ ω`, each antisymmetric on frame indices.
pub fn so3_curvature<T: Real>(geom: &ShellGeometry<T>, z: &ChartPoint<T>) -> [Mat3<T>; 3] {
    let m = geom.mass();
    let e = geom.energy(z.rho);
    let (st, ct) = (z.theta.sin(), z.theta.cos());
    let _ = ct;
    let mut o_rt = Mat3::zero();
    o_rt.0[0][1] = -z.rho / (e * m);
    o_rt.0[1][0] = z.rho / (e * m);
    let mut o_rp = Mat3::zero();
    o_rp.0[0][2] = -z.rho * st / (e * m);
    o_rp.0[2][0] = z.rho * st / (e * m);
    let mut o_tp = Mat3::zero();
    o_tp.0[1][2] = -z.rho * z.rho * st / (m * m);
    o_tp.0[2][1] = z.rho * z.rho * st / (m * m);
    [o_rt, o_rp, o_tp]
}

/// Spinor curvature coefficients: the φ-image of [`so3_curvature`],
/// `Ω^s_{ρθ} = −(i/2)(ρ/(Em))σ₃`, `Ω^s_{ρφ} = (i/2)(ρ sinθ/(Em))σ₂`,
/// `Ω^s_{θφ} = −(i/2)(ρ² sinθ/m²)σ₁`.
pub fn spinor_curvature<T: Real>(geom: &ShellGeometry<T>, z: &ChartPoint<T>) -> [CMat2<T>; 3] {
    let m = geom.mass();
    let e = geom.energy(z.rho);
    let st = z.theta.sin();
    [
        su2_from_coefficients(&Vec3([T::zero(), T::zero(), z.rho / (e * m)])),
        su2_from_coefficients(&Vec3([T::zero(), -z.rho * st / (e * m), T::zero()])),
        su2_from_coefficients(&Vec3([z.rho * z.rho * st / (m * m), T::zero(), T::zero()])),
    ]
}
