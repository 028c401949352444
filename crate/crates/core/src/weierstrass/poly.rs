//! Dense polynomials over a coefficient field, with numerical root finding
//! for the floating point case.

use num_complex::Complex;

use crate::scalar::{Field, Real};

/// Builds the integer `n` in any field by binary doubling.
pub fn field_int<F: Field>(n: i64) -> F {
    let mut acc = F::zero();
    let mut bit = F::one();
    let mut m = n.unsigned_abs();
    while m > 0 {
        if m & 1 == 1 {
            acc = acc + bit.clone();
        }
        bit = bit.clone() + bit;
        m >>= 1;
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

/// `c[0] + c[1] z + ... + c[n] z^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    /// Trailing zero coefficients are dropped.
    pub fn new(coeffs: Vec<F>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// `(z - root)^mult`.
    pub fn linear_power(root: &F, mult: u32) -> Self {
        let factor = Self::new(vec![-root.clone(), F::one()]);
        let mut out = Self::one();
        for _ in 0..mult {
            out = out.mul(&factor);
        }
        out
    }

    /// Monic polynomial with the given roots and multiplicities.
    pub fn from_roots(roots: &[(F, u32)]) -> Self {
        roots.iter().fold(Self::one(), |acc, (r, m)| acc.mul(&Self::linear_power(r, *m)))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, z: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * field_int(k as i64)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(F::zero);
        Self::new((0..n).map(|k| get(self, k) + get(other, k)).collect())
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * a.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Coefficients of `p(a + w)` in powers of `w` (repeated synthetic
    /// division).
    pub fn taylor_shift(&self, a: &F) -> Vec<F> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = c[j].clone() + a.clone() * c[j + 1].clone();
            }
        }
        c
    }

    /// Quotient by `(z - a)` when `a` is an exact root, `None` otherwise.
    pub fn deflate(&self, a: &F) -> Option<Self> {
        let n = self.coeffs.len();
        if n == 0 {
            return None;
        }
        let mut q = vec![F::zero(); n - 1];
        let mut carry = F::zero();
        for k in (0..n).rev() {
            let next = self.coeffs[k].clone() + carry.clone() * a.clone();
            if k == 0 {
                return next.is_zero().then(|| Self::new(q));
            }
            q[k - 1] = next.clone();
            carry = next;
        }
        None
    }
}

impl<T: Real> Poly<Complex<T>> {
    /// All complex roots by Aberth–Ehrlich iteration, returned with
    /// multiplicities after clustering roots closer than `cluster` (relative
    /// to the root bound).
    pub fn roots(&self, cluster: T) -> Vec<(Complex<T>, u32)> {
        let n = match self.degree() {
            None | Some(0) => return Vec::new(),
            Some(n) => n,
        };
        let lead = self.leading();
        let monic: Vec<Complex<T>> = self.coeffs.iter().map(|c| *c / lead).collect();
        let bound = T::one() + monic[..n].iter().map(|c| c.norm()).fold(T::zero(), T::max);
        let p = Poly::new(monic);
        let dp = p.derivative();

        // Initial guesses on a circle, rotated off the real axis.
        let mut z: Vec<Complex<T>> = (0..n)
            .map(|k| {
                let angle = T::TAU() * T::lit(k as f64) / T::lit(n as f64) + T::lit(0.4);
                Complex::from_polar(bound * T::lit(0.5), angle)
            })
            .collect();
        for _ in 0..500 {
            let mut moved = T::zero();
            for k in 0..n {
                let pk = p.eval(&z[k]);
                if pk.norm() == T::zero() {
                    continue;
                }
                let ratio = pk / dp.eval(&z[k]);
                let repulsion: Complex<T> = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| Complex::new(T::one(), T::zero()) / (z[k] - z[j]))
                    .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
                let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
                if step.re.is_finite() && step.im.is_finite() {
                    z[k] = z[k] - step;
                    moved = moved.max(step.norm());
                }
            }
            if moved <= T::eps() * bound * T::lit(4.0) {
                break;
            }
        }

        let radius = cluster * bound;
        let mut groups: Vec<(Complex<T>, u32)> = Vec::new();
        for r in z {
            match groups.iter_mut().find(|(c, _)| (*c - r).norm() < radius) {
                Some((c, m)) => {
                    let w = T::lit(*m as f64);
                    *c = (*c * w + r) / (w + T::one());
                    *m += 1;
                }
                None => groups.push((r, 1)),
            }
        }
        groups
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;
    use num_rational::BigRational;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn field_int_matches_integers() {
        for n in [-7i64, 0, 1, 2, 13, 1000] {
            assert_eq!(field_int::<f64>(n), n as f64);
        }
        let q: BigRational = field_int(-5);
        assert_eq!(q, BigRational::from_integer((-5).into()));
    }

    #[test]
    fn taylor_shift_of_square() {
        // z^2 at 1 + w = 1 + 2w + w^2
        let p = Poly::new(vec![0.0, 0.0, 1.0]);
        assert_eq!(p.taylor_shift(&1.0), vec![1.0, 2.0, 1.0]);
    }

    #[test]
    fn from_roots_and_deflate_exact() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let one = ExactComplex::new(q(1), q(0));
        let i = ExactComplex::new(q(0), q(1));
        let p = Poly::from_roots(&[(one.clone(), 2), (i.clone(), 1)]);
        assert_eq!(p.degree(), Some(3));
        let q = p.deflate(&i).unwrap();
        assert_eq!(q, Poly::from_roots(&[(one.clone(), 2)]));
        assert!(q.deflate(&i).is_none());
    }

    #[test]
    fn aberth_finds_multiple_roots() {
        let p = Poly::from_roots(&[(c(1.0, 0.0), 2), (c(-1.0, 0.5), 1), (c(0.0, -2.0), 1)]);
        let mut r = p.roots(1e-5);
        r.sort_by(|a, b| a.0.re.partial_cmp(&b.0.re).unwrap());
        assert_eq!(r.len(), 3);
        assert!((r[0].0 - c(-1.0, 0.5)).norm() < 1e-10);
        assert_eq!(r[2].1, 2);
        assert!((r[2].0 - c(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn derivative_and_eval() {
        let p = Poly::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(3.0, 0.0)]);
        let z = c(0.3, -0.2);
        assert!((p.derivative().eval(&z) - (c(0.0, 2.0) + z * 6.0)).norm() < 1e-15);
    }
}
