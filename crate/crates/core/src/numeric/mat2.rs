use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

/// A real 2x2 matrix, stored row-major as `[[a, b], [c, d]]`.
///
/// Used for shape operators, metrics and the complex structure in either a
/// coordinate basis or an orthonormal frame; the basis is the caller's
/// responsibility.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2<T> {
    pub m: [[T; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn diag(a: T, d: T) -> Self {
        Self::new(a, T::zero(), T::zero(), d)
    }

    /// Rotation by +90 degrees: the complex structure of an oriented
    /// orthonormal frame.
    pub fn rot90() -> Self {
        Self::new(T::zero(), -T::one(), T::one(), T::zero())
    }

    pub fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, -s, s, c)
    }

    /// Matrix whose columns are `c0` and `c1`.
    pub fn from_columns(c0: [T; 2], c1: [T; 2]) -> Self {
        Self::new(c0[0], c1[0], c0[1], c1[1])
    }

    pub fn column(&self, j: usize) -> [T; 2] {
        [self.m[0][j], self.m[1][j]]
    }

    pub fn trace(&self) -> T {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> T {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == T::zero() || !d.is_finite() {
            return None;
        }
        Some(Self::new(self.m[1][1] / d, -self.m[0][1] / d, -self.m[1][0] / d, self.m[0][0] / d))
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.m[0][0] * s, self.m[0][1] * s, self.m[1][0] * s, self.m[1][1] * s)
    }

    pub fn apply(&self, v: [T; 2]) -> [T; 2] {
        [self.m[0][0] * v[0] + self.m[0][1] * v[1], self.m[1][0] * v[0] + self.m[1][1] * v[1]]
    }

    pub fn max_abs(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }

    /// Asymmetry `|b - c|`.
    pub fn asymmetry(&self) -> T {
        (self.m[0][1] - self.m[1][0]).abs()
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Real> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rot90_squares_to_minus_identity() {
        let j = Mat2::<f64>::rot90();
        assert_eq!(j * j, -Mat2::identity());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Mat2::new(2.0, 1.0, 0.5, 3.0);
        let p = a * a.inverse().unwrap();
        assert!((p - Mat2::identity()).max_abs() < 1e-15);
        assert!(Mat2::<f64>::zero().inverse().is_none());
    }
}
