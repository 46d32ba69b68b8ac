//! Small fixed-size vectors and matrices.
//!
//! Everything in this crate is 2-, 3-, or 4-dimensional with closed-form
//! inverses (rotations by transpose, Lorentz maps by η-conjugation, SU(2) by
//! adjoint), so a minimal hand-rolled kit generic over [`Real`] is used
//! instead of a general linear-algebra dependency. Matrices are row-major.

use crate::scalar::Real;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// 3-vector (Euclidean).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3<T>(pub [T; 3]);

/// 4-vector component container (no metric attached; Minkowski pairings live
/// in the `lorentz` module).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec4<T>(pub [T; 4]);

/// Real 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

/// Real 4×4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4<T>(pub [[T; 4]; 4]);

/// Complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2<T>(pub [[Complex<T>; 2]; 2]);

/// Two-component complex spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<T>(pub [Complex<T>; 2]);

// --- Vec3 ---

impl<T: Real> Vec3<T> {
    pub fn zero() -> Self {
        Vec3([T::zero(); 3])
    }

    /// Standard basis vector `ê_i`, `i ∈ {0,1,2}`.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = T::one();
        v
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &Self) -> Self {
        let a = &self.0;
        let b = &other.0;
        Vec3([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    pub fn norm_squared(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn scale(&self, s: T) -> Self {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    /// Unit vector in the same direction; `None` for (numerically) zero input.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() {
            Some(self.scale(T::one() / n))
        } else {
            None
        }
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// Angle between the directions of two nonzero vectors, in `[0, π]`.
    pub fn angle_to(&self, other: &Self) -> T {
        let c = self.dot(other) / (self.norm() * other.norm());
        c.min(T::one()).max(-T::one()).acos()
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vec3<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

// --- Vec4 ---

impl<T: Real> Vec4<T> {
    pub fn zero() -> Self {
        Vec4([T::zero(); 4])
    }

    pub fn new(t: T, x: T, y: T, z: T) -> Self {
        Vec4([t, x, y, z])
    }

    pub fn from_time_spatial(t: T, s: &Vec3<T>) -> Self {
        Vec4([t, s.0[0], s.0[1], s.0[2]])
    }

    pub fn time(&self) -> T {
        self.0[0]
    }

    pub fn spatial(&self) -> Vec3<T> {
        Vec3([self.0[1], self.0[2], self.0[3]])
    }

    pub fn scale(&self, s: T) -> Self {
        Vec4([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl<T: Real> Add for Vec4<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec4([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }
}

impl<T: Real> Sub for Vec4<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec4([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }
}

impl<T> Index<usize> for Vec4<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vec4<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

// --- Mat3 ---

impl<T: Real> Mat3<T> {
    pub fn zero() -> Self {
        Mat3([[T::zero(); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = T::one();
        }
        m
    }

    pub fn from_rows(r0: [T; 3], r1: [T; 3], r2: [T; 3]) -> Self {
        Mat3([r0, r1, r2])
    }

    pub fn from_columns(c0: &Vec3<T>, c1: &Vec3<T>, c2: &Vec3<T>) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][0] = c0.0[i];
            m.0[i][1] = c1.0[i];
            m.0[i][2] = c2.0[i];
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec3<T> {
        Vec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn trace(&self) -> T {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> T {
        let a = &self.0;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    pub fn scale(&self, s: T) -> Self {
        let mut m = *self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = m.0[i][j] * s;
            }
        }
        m
    }

    pub fn max_abs(&self) -> T {
        self.0
            .iter()
            .flatten()
            .fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// `max |RᵀR − I|`: zero for an exactly orthogonal matrix.
    pub fn orthogonality_defect(&self) -> T {
        (self.transpose() * *self).max_abs_diff(&Self::identity())
    }

    /// `max |A + Aᵀ|`: zero for an exactly antisymmetric matrix.
    pub fn antisymmetry_defect(&self) -> T {
        (*self + self.transpose()).max_abs()
    }

    /// Matrix commutator `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }
}

impl<T: Real> Add for Mat3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = m.0[i][j] + o.0[i][j];
            }
        }
        m
    }
}

impl<T: Real> Sub for Mat3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = m.0[i][j] - o.0[i][j];
            }
        }
        m
    }
}

impl<T: Real> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = T::zero();
                for k in 0..3 {
                    s = s + self.0[i][k] * o.0[k][j];
                }
                m.0[i][j] = s;
            }
        }
        m
    }
}

impl<T: Real> Mul<Vec3<T>> for Mat3<T> {
    type Output = Vec3<T>;
    fn mul(self, v: Vec3<T>) -> Vec3<T> {
        let mut r = Vec3::zero();
        for i in 0..3 {
            r.0[i] = self.0[i][0] * v.0[0] + self.0[i][1] * v.0[1] + self.0[i][2] * v.0[2];
        }
        r
    }
}

// --- Mat4 ---

impl<T: Real> Mat4<T> {
    pub fn zero() -> Self {
        Mat4([[T::zero(); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = T::one();
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut m = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        m
    }

    /// Spatial 3×3 block (rows/columns 1..3).
    pub fn spatial_block(&self) -> Mat3<T> {
        let mut b = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                b.0[i][j] = self.0[i + 1][j + 1];
            }
        }
        b
    }
}

impl<T: Real> Mul for Mat4<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = T::zero();
                for k in 0..4 {
                    s = s + self.0[i][k] * o.0[k][j];
                }
                m.0[i][j] = s;
            }
        }
        m
    }
}

impl<T: Real> Mul<Vec4<T>> for Mat4<T> {
    type Output = Vec4<T>;
    fn mul(self, v: Vec4<T>) -> Vec4<T> {
        let mut r = Vec4::zero();
        for i in 0..4 {
            let mut s = T::zero();
            for k in 0..4 {
                s = s + self.0[i][k] * v.0[k];
            }
            r.0[i] = s;
        }
        r
    }
}

// --- CMat2 ---

impl<T: Real> CMat2<T> {
    pub fn zero() -> Self {
        CMat2([[Complex::new(T::zero(), T::zero()); 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.0[0][0] = Complex::new(T::one(), T::zero());
        m.0[1][1] = Complex::new(T::one(), T::zero());
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex<T> {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut m = *self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = m.0[i][j] * s;
            }
        }
        m
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut m = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        m
    }

    pub fn max_abs(&self) -> T {
        self.max_abs_diff(&Self::zero())
    }

    /// `max |U†U − I|`: zero for an exactly unitary matrix.
    pub fn unitarity_defect(&self) -> T {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Projects a matrix that is already close to SU(2) onto SU(2).
    ///
    /// Every SU(2) element has the form ((a, −b̄), (b, ā)) with
    /// |a|² + |b|² = 1; averaging the two copies of a and b and rescaling
    /// realizes the polar (nearest-unitary) projection for such matrices.
    /// Long products of exponentials need this: each factor is unitary only
    /// to roundoff, and over many thousands of factors the defects add up.
    pub fn nearest_su2(&self) -> Self {
        let half = (T::one() + T::one()).recip();
        let a = (self.0[0][0] + self.0[1][1].conj()).scale(half);
        let b = (self.0[1][0] - self.0[0][1].conj()).scale(half);
        let s = (a.norm_sqr() + b.norm_sqr()).sqrt().recip();
        let mut m = Self::zero();
        m.0[0][0] = a.scale(s);
        m.0[0][1] = -b.conj().scale(s);
        m.0[1][0] = b.scale(s);
        m.0[1][1] = a.conj().scale(s);
        m
    }
}

impl<T: Real> Add for CMat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut m = self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = m.0[i][j] + o.0[i][j];
            }
        }
        m
    }
}

impl<T: Real> Sub for CMat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut m = self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = m.0[i][j] - o.0[i][j];
            }
        }
        m
    }
}

impl<T: Real> Neg for CMat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-T::one())
    }
}

impl<T: Real> Mul for CMat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j];
            }
        }
        m
    }
}

impl<T: Real> Mul<Spinor<T>> for CMat2<T> {
    type Output = Spinor<T>;
    fn mul(self, s: Spinor<T>) -> Spinor<T> {
        Spinor([
            self.0[0][0] * s.0[0] + self.0[0][1] * s.0[1],
            self.0[1][0] * s.0[0] + self.0[1][1] * s.0[1],
        ])
    }
}

// --- Spinor ---

impl<T: Real> Spinor<T> {
    pub fn new(a: Complex<T>, b: Complex<T>) -> Self {
        Spinor([a, b])
    }

    /// Basis spinor `(1, 0)`.
    pub fn up() -> Self {
        Spinor([
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        ])
    }

    pub fn norm(&self) -> T {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr()).sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.0[0] - other.0[0])
            .norm()
            .max((self.0[1] - other.0[1]).norm())
    }
}
