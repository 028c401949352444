//! Central-difference partial derivatives of maps `(u, v) -> R^3`.

use crate::numeric::{Tolerances, Vec3};
use crate::scalar::Real;

/// Position and partial derivatives up to order two at a parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet<T> {
    pub x: Vec3<T>,
    pub xu: Vec3<T>,
    pub xv: Vec3<T>,
    pub xuu: Vec3<T>,
    pub xuv: Vec3<T>,
    pub xvv: Vec3<T>,
}

impl<T: Real> Jet<T> {
    /// `a * self + b * other`, derivative by derivative.
    pub fn combine(&self, a: T, other: &Jet<T>, b: T) -> Jet<T> {
        Jet {
            x: self.x * a + other.x * b,
            xu: self.xu * a + other.xu * b,
            xv: self.xv * a + other.xv * b,
            xuu: self.xuu * a + other.xuu * b,
            xuv: self.xuv * a + other.xuv * b,
            xvv: self.xvv * a + other.xvv * b,
        }
    }

    pub fn scaled(&self, a: T) -> Jet<T> {
        self.combine(a, &Jet::default(), T::zero())
    }

    pub fn translated(mut self, b: Vec3<T>) -> Jet<T> {
        self.x += b;
        self
    }

    /// Applies a linear map to every component.
    pub fn map(&self, f: impl Fn(Vec3<T>) -> Vec3<T>) -> Jet<T> {
        Jet { x: f(self.x), xu: f(self.xu), xv: f(self.xv), xuu: f(self.xuu), xuv: f(self.xuv), xvv: f(self.xvv) }
    }

    pub fn is_finite(&self) -> bool {
        [self.x, self.xu, self.xv, self.xuu, self.xuv, self.xvv].iter().all(|v| v.is_finite())
    }
}

/// Step scale for a parameter point: `max(1, |u|, |v|)`.
pub fn point_scale<T: Real>(u: T, v: T) -> T {
    T::one().max(u.abs()).max(v.abs())
}

/// Central-difference jet of `f` at `(u, v)`.
///
/// First and mixed partials use `h = fd_step * scale`; the pure second
/// partials use the wider `fd_step2` so that roundoff does not dominate.
/// `order` 1 leaves the second derivatives at zero.
pub fn fd_jet<T: Real>(f: impl Fn(T, T) -> Vec3<T>, u: T, v: T, order: u8, tol: &Tolerances<T>) -> Jet<T> {
    let scale = point_scale(u, v);
    let h = tol.fd_step * scale;
    let two = T::lit(2.0);
    let x = f(u, v);
    let xu = (f(u + h, v) - f(u - h, v)) / (two * h);
    let xv = (f(u, v + h) - f(u, v - h)) / (two * h);
    let mut jet = Jet { x, xu, xv, ..Jet::default() };
    if order >= 2 {
        let h2 = tol.fd_step2() * scale;
        jet.xuu = (f(u + h2, v) - x * two + f(u - h2, v)) / (h2 * h2);
        jet.xvv = (f(u, v + h2) - x * two + f(u, v - h2)) / (h2 * h2);
        jet.xuv =
            (f(u + h2, v + h2) - f(u + h2, v - h2) - f(u - h2, v + h2) + f(u - h2, v - h2)) / (T::lit(4.0) * h2 * h2);
    }
    jet
}

/// Fourth-order central first derivative of a scalar-valued map, used by
/// residual checks that difference already-differentiated quantities.
pub fn d1_4th<T: Real, V>(f: impl Fn(T) -> V, s: T, h: T) -> V
where
    V: std::ops::Add<Output = V> + std::ops::Sub<Output = V> + std::ops::Mul<T, Output = V>,
{
    let c = T::one() / (T::lit(12.0) * h);
    ((f(s - h * T::lit(2.0)) - f(s + h * T::lit(2.0))) + (f(s + h) - f(s - h)) * T::lit(8.0)) * c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_map_has_exact_first_partials() {
        let tol = Tolerances::default();
        let f = |u: f64, v: f64| Vec3::new(2.0 * u + v, -u, 3.0 * v + 1.0);
        let j = fd_jet(f, 0.3, -0.7, 2, &tol);
        assert!((j.xu - Vec3::new(2.0, -1.0, 0.0)).norm() < 1e-9);
        assert!((j.xv - Vec3::new(1.0, 0.0, 3.0)).norm() < 1e-9);
        assert!(j.xuu.norm() < 1e-9 && j.xuv.norm() < 1e-9 && j.xvv.norm() < 1e-9);
    }

    #[test]
    fn quadratic_second_partial() {
        let tol = Tolerances::default();
        let j = fd_jet(|u: f64, _v| Vec3::new(u * u, 0.0, 0.0), 0.8, 0.1, 2, &tol);
        assert!((j.xuu - Vec3::new(2.0, 0.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn catenoid_first_partial_matches_analytic() {
        let tol = Tolerances::default();
        let cat = |u: f64, v: f64| Vec3::new(v.cosh() * u.cos(), v.cosh() * u.sin(), v);
        let j = fd_jet(cat, 0.0, 0.0, 1, &tol);
        // analytic x_u = cosh v (-sin u, cos u, 0)
        assert!((j.xu - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-8);
        assert!((j.xv - Vec3::new(0.0, 0.0, 1.0)).norm() < 1e-8);
    }

    #[test]
    fn fourth_order_derivative() {
        let d = d1_4th(|s: f64| s.sin(), 0.4, 1e-3);
        assert!((d - 0.4f64.cos()).abs() < 1e-12);
    }
}
