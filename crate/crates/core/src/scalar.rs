//! Scalar abstractions shared by every module.
//!
//! [`Real`] covers the floating point types the geometry is evaluated in.
//! [`Field`] covers exact and inexact coefficient fields used by the
//! rational-function and residue code, so the same Laurent expansion runs
//! over `Complex<f64>` and over Gaussian rationals.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal. Never fails for the supported types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Machine epsilon of the type.
    #[inline]
    fn eps() -> Self {
        Self::epsilon()
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for `T::lit`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

/// A commutative field of coefficients.
pub trait Field: Num + Clone + Debug + std::ops::Neg<Output = Self> {}

impl<F> Field for F where F: Num + Clone + Debug + std::ops::Neg<Output = F> {}

/// Gaussian rationals: the exact field used by the residue oracle.
pub type ExactComplex = Complex<BigRational>;

/// Converts a finite `f64` to an exact rational. Every finite double is a
/// dyadic rational, so the conversion is lossless.
pub fn exact_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Lossless conversion of a complex double into a Gaussian rational.
pub fn exact_complex(z: Complex<f64>) -> Option<ExactComplex> {
    Some(Complex::new(exact_rational(z.re)?, exact_rational(z.im)?))
}

/// Nearest double to an exact rational.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back to a shifted division when numerator or denominator
        // overflow f64 on their own.
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000) as usize;
        let n: BigInt = q.numer() >> shift;
        let d: BigInt = q.denom() >> shift;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Nearest complex double to a Gaussian rational.
pub fn exact_to_complex(z: &ExactComplex) -> Complex<f64> {
    Complex::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn exact_roundtrip_is_lossless() {
        for &x in &[0.1, -3.75, 1e-300, 123456789.123] {
            let q = exact_rational(x).unwrap();
            assert_eq!(rational_to_f64(&q), x);
        }
        assert!(exact_rational(f64::NAN).is_none());
    }

    #[test]
    fn exact_field_arithmetic_cancels() {
        let a = exact_complex(Complex::new(0.3, 0.7)).unwrap();
        let b = a.clone() * a.clone() - a.clone() * a;
        assert!(b.is_zero());
    }
}
