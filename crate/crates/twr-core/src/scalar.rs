//! Scalar abstraction.
//!
//! Every numerical routine in this crate is generic over a floating-point
//! type implementing [`Real`]. The blanket impl covers `f32` and `f64`;
//! concrete `f64` aliases for the main types live at the crate root.

use core::fmt::{Debug, Display};
use core::iter::Sum;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable throughout the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`, rounding once.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must be representable in the scalar type")
}

/// Converts a step count into `T` (exact for the ranges used here).
#[inline]
pub(crate) fn count<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("step count must be representable in the scalar type")
}

#[inline]
pub(crate) fn two<T: Real>() -> T {
    T::one() + T::one()
}

#[inline]
pub(crate) fn half<T: Real>() -> T {
    T::one() / two::<T>()
}

/// Lossy diagnostic conversion used in error payloads.
#[inline]
pub(crate) fn diag<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Relative tolerance for endpoint joins and tangency checks: `1e-9` for
/// `f64`, widened to a small multiple of machine epsilon for scalar types
/// whose roundoff exceeds that.
#[inline]
pub(crate) fn join_tol<T: Real>() -> T {
    lit::<T>(1e-9).max(T::epsilon() * lit::<T>(128.0))
}

/// Gate on the raw orthogonality defect of an integrated holonomy before it
/// is polished into an exact rotation: `1e-6` for `f64`, epsilon-scaled for
/// coarser scalar types.
#[inline]
pub(crate) fn rotation_gate_tol<T: Real>() -> T {
    lit::<T>(1e-6).max(T::epsilon() * lit::<T>(2e4))
}

/// Wraps an angle into `(-π, π]`.
#[inline]
pub(crate) fn wrap_to_pi<T: Real>(x: T) -> T {
    let tau = T::TAU();
    let mut r = x % tau;
    if r > T::PI() {
        r = r - tau;
    } else if r <= -T::PI() {
        r = r + tau;
    }
    r
}
