//! Composite Gauss-Legendre quadrature with panel doubling.
//!
//! The rule is applied on `2^k` equal panels; `k` grows until two
//! successive estimates agree within the requested tolerance. Integrands
//! may be scalar, complex, 3-vectors or fixed-size arrays of those.

use num_complex::Complex;

use crate::error::{GeomError, Result};
use crate::numeric::{Tolerances, Vec3};
use crate::scalar::Real;

/// Values that can be accumulated by a quadrature rule.
pub trait Integrand<T: Real>: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, s: T) -> Self;
    /// A norm used for convergence checks.
    fn magnitude(self) -> T;
}

impl<T: Real> Integrand<T> for T {
    fn zero() -> Self {
        T::zero()
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: T) -> Self {
        self * s
    }
    fn magnitude(self) -> T {
        self.abs()
    }
}

impl<T: Real> Integrand<T> for Complex<T> {
    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: T) -> Self {
        self * s
    }
    fn magnitude(self) -> T {
        self.norm()
    }
}

impl<T: Real> Integrand<T> for Vec3<T> {
    fn zero() -> Self {
        Vec3::zero()
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: T) -> Self {
        self * s
    }
    fn magnitude(self) -> T {
        self.norm()
    }
}

impl<T: Real, V: Integrand<T>, const N: usize> Integrand<T> for [V; N] {
    fn zero() -> Self {
        [V::zero(); N]
    }
    fn add(mut self, other: Self) -> Self {
        for (a, b) in self.iter_mut().zip(other) {
            *a = a.add(b);
        }
        self
    }
    fn scale(mut self, s: T) -> Self {
        for a in self.iter_mut() {
            *a = a.scale(s);
        }
        self
    }
    fn magnitude(self) -> T {
        self.iter().fold(T::zero(), |m, a| m.max(a.magnitude()))
    }
}

/// Nodes and weights of an `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Builds the rule by Newton iteration on the Legendre polynomial,
    /// starting from the Chebyshev-like guesses `cos(pi (i - 1/4) / (n + 1/2))`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let nf = T::lit(n as f64);
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        for i in 0..n.div_ceil(2) {
            let mut x = (T::PI() * (T::lit(i as f64) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::eps() * T::lit(4.0) {
                    let (_, d) = legendre(n, x);
                    dp = d;
                    break;
                }
            }
            let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Single application of the rule on `[a, b]`.
    pub fn apply<V, F>(&self, a: T, b: T, f: &mut F) -> Result<V>
    where
        V: Integrand<T>,
        F: FnMut(T) -> Result<V>,
    {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        let mut acc = V::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc.add(f(mid + half * x)?.scale(w));
        }
        Ok(acc.scale(half))
    }
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term recurrence.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::lit(k as f64);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (T::one(), T::zero());
    }
    let nf = T::lit(n as f64);
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<V, T> {
    pub value: V,
    /// Magnitude of the difference between the last two estimates.
    pub error_estimate: T,
    pub evaluations: usize,
}

/// Number of Gauss-Legendre nodes per panel.
pub const RULE_ORDER: usize = 10;

/// Integrates a fallible integrand over `[a, b]`.
pub fn integrate_fallible<T, V, F>(mut f: F, a: T, b: T, tol: &Tolerances<T>) -> Result<Quadrature<V, T>>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> Result<V>,
{
    let rule = GaussLegendre::<T>::new(RULE_ORDER);
    let mut previous = rule.apply(a, b, &mut f)?;
    let mut evaluations = rule.len();
    let mut achieved = T::infinity();
    for level in 1..=tol.quad_max_level {
        let panels = 1usize << level;
        let width = (b - a) / T::lit(panels as f64);
        let mut current = V::zero();
        for k in 0..panels {
            let lo = a + width * T::lit(k as f64);
            let hi = if k + 1 == panels { b } else { lo + width };
            current = current.add(rule.apply(lo, hi, &mut f)?);
        }
        evaluations += panels * rule.len();
        let diff = current.add(previous.scale(-T::one())).magnitude();
        achieved = diff;
        if diff <= tol.quad_target(current.magnitude()) {
            return Ok(Quadrature { value: current, error_estimate: diff, evaluations });
        }
        previous = current;
    }
    Err(GeomError::QuadratureFailure {
        achieved: achieved.to_f64_lossy(),
        requested: tol.quad_target(previous.magnitude()).to_f64_lossy(),
    })
}

/// Integrates an infallible integrand over `[a, b]`.
pub fn integrate<T, V, F>(mut f: F, a: T, b: T, tol: &Tolerances<T>) -> Result<Quadrature<V, T>>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    integrate_fallible(|s| Ok(f(s)), a, b, tol)
}

/// Componentwise `\int_0^L f(s) ds` of a vector-valued integrand.
pub fn integrate_real_1form<T, F>(f: F, length: T, tol: &Tolerances<T>) -> Result<Quadrature<Vec3<T>, T>>
where
    T: Real,
    F: FnMut(T) -> Vec3<T>,
{
    integrate(f, T::zero(), length, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = GaussLegendre::<f64>::new(RULE_ORDER);
        let wsum: f64 = rule.weights().iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        for deg in 0..(2 * RULE_ORDER) {
            let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            let got: f64 = rule.apply(-1.0, 1.0, &mut |x: f64| Ok(x.powi(deg as i32))).unwrap();
            assert!((got - exact).abs() < 1e-14, "degree {deg}: {got} vs {exact}");
        }
    }

    #[test]
    fn real_1form_examples() {
        let tol = Tolerances::default();
        let full = integrate_real_1form(|s: f64| Vec3::new(s.sin(), -s.cos(), 0.0), 2.0 * PI, &tol).unwrap();
        assert!(full.value.norm() < 1e-12);
        let c = integrate_real_1form(|_| Vec3::new(0.0, 0.0, 1.0), 2.0 * PI, &tol).unwrap();
        assert!((c.value - Vec3::new(0.0, 0.0, 2.0 * PI)).norm() < 1e-13);
        let p = integrate_real_1form(|s| Vec3::new(0.0, 0.0, s), 1.0, &tol).unwrap();
        assert!((p.value.z - 0.5).abs() < 1e-15);
    }

    #[test]
    fn reports_failure_with_estimate() {
        // 1/sqrt(x) has an endpoint singularity the doubling cannot resolve
        // to 1e-14 within three levels.
        let tol = Tolerances { quad_max_level: 3, ..Tolerances::default() }.with_quad(1e-14);
        let err = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &tol).unwrap_err();
        match err {
            GeomError::QuadratureFailure { achieved, .. } => assert!(achieved > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn f32_rule() {
        let tol = Tolerances::<f32>::default();
        let r = integrate(|x: f32| x.exp(), 0.0, 1.0, &tol).unwrap();
        assert!((r.value - (1f32.exp() - 1.0)).abs() < 1e-5);
    }
}
