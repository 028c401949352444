//! Piecewise-smooth paths in the complex plane and contour integration.

use num_complex::Complex;

use crate::error::{GeomError, Result};
use crate::numeric::quadrature::{integrate_fallible, Integrand};
use crate::numeric::Tolerances;
use crate::scalar::Real;

/// A path `[0, 1] -> C` made of smooth pieces.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexPath<T> {
    /// `center + radius * exp(2 pi i turns s)`; negative turns run clockwise.
    Circle { center: Complex<T>, radius: T, turns: i32 },
    /// Straight segments through the listed vertices. When `closed`, the
    /// last vertex is joined back to the first.
    Polyline { points: Vec<Complex<T>>, closed: bool },
}

/// One smooth piece of a path, parametrized over `[0, 1]`.
#[derive(Debug, Clone, Copy)]
enum Piece<T> {
    Arc { center: Complex<T>, radius: T, turns: T },
    Segment { from: Complex<T>, to: Complex<T> },
}

impl<T: Real> Piece<T> {
    fn point(&self, s: T) -> Complex<T> {
        match *self {
            Piece::Arc { center, radius, turns } => center + Complex::from_polar(radius, T::TAU() * turns * s),
            Piece::Segment { from, to } => from + (to - from) * s,
        }
    }

    fn velocity(&self, s: T) -> Complex<T> {
        match *self {
            Piece::Arc { radius, turns, .. } => {
                let w = T::TAU() * turns;
                Complex::from_polar(radius * w, w * s) * Complex::i()
            }
            Piece::Segment { from, to } => to - from,
        }
    }

    fn distance_to(&self, p: Complex<T>) -> T {
        match *self {
            Piece::Arc { center, radius, .. } => ((p - center).norm() - radius).abs(),
            Piece::Segment { from, to } => segment_distance(from, to, p),
        }
    }
}

fn segment_distance<T: Real>(a: Complex<T>, b: Complex<T>, p: Complex<T>) -> T {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == T::zero() {
        return (p - a).norm();
    }
    let s = ((p - a) * d.conj()).re / len2;
    let s = s.max(T::zero()).min(T::one());
    (p - (a + d * s)).norm()
}

impl<T: Real> ComplexPath<T> {
    pub fn circle(center: Complex<T>, radius: T) -> Self {
        ComplexPath::Circle { center, radius, turns: 1 }
    }

    pub fn segment(from: Complex<T>, to: Complex<T>) -> Self {
        ComplexPath::Polyline { points: vec![from, to], closed: false }
    }

    fn pieces(&self) -> Vec<Piece<T>> {
        match self {
            ComplexPath::Circle { center, radius, turns } => {
                vec![Piece::Arc { center: *center, radius: *radius, turns: T::lit(*turns as f64) }]
            }
            ComplexPath::Polyline { points, closed } => {
                let mut out: Vec<_> = points.windows(2).map(|w| Piece::Segment { from: w[0], to: w[1] }).collect();
                if *closed && points.len() > 1 {
                    out.push(Piece::Segment { from: points[points.len() - 1], to: points[0] });
                }
                out
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            ComplexPath::Circle { .. } => true,
            ComplexPath::Polyline { closed, .. } => *closed,
        }
    }

    /// Point at global parameter `t` in `[0, 1]`.
    pub fn point(&self, t: T) -> Complex<T> {
        let pieces = self.pieces();
        let n = T::lit(pieces.len() as f64);
        let scaled = (t * n).max(T::zero());
        let idx = scaled.floor().to_usize().unwrap_or(0).min(pieces.len() - 1);
        pieces[idx].point(scaled - T::lit(idx as f64))
    }

    pub fn start(&self) -> Complex<T> {
        self.point(T::zero())
    }

    pub fn end(&self) -> Complex<T> {
        self.point(T::one())
    }

    /// Minimum distance from the path to `p`.
    pub fn distance_to(&self, p: Complex<T>) -> T {
        self.pieces().iter().map(|piece| piece.distance_to(p)).fold(T::infinity(), T::min)
    }

    /// Fails if the path comes within `clearance` of any of `points`.
    pub fn check_clearance(&self, points: &[Complex<T>], clearance: T) -> Result<()> {
        for &p in points {
            let d = self.distance_to(p);
            if d < clearance {
                return Err(GeomError::PunctureClearance {
                    re: p.re.to_f64_lossy(),
                    im: p.im.to_f64_lossy(),
                    distance: d.to_f64_lossy(),
                    clearance: clearance.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }

    /// Winding number of a closed path about `p` (zero for open paths).
    pub fn winding_number(&self, p: Complex<T>) -> i32 {
        if !self.is_closed() {
            return 0;
        }
        match self {
            ComplexPath::Circle { center, radius, turns } => {
                if (p - *center).norm() < *radius {
                    *turns
                } else {
                    0
                }
            }
            ComplexPath::Polyline { points, .. } => {
                let mut total = T::zero();
                let n = points.len();
                for i in 0..n {
                    let a = points[i] - p;
                    let b = points[(i + 1) % n] - p;
                    total = total + (b / a).arg();
                }
                (total / T::TAU()).round().to_i32().unwrap_or(0)
            }
        }
    }
}

/// `\int_path f(z) dz` for any integrand shape (scalar or array of complex).
pub fn integrate_path_with<T, V, F>(mut f: F, path: &ComplexPath<T>, tol: &Tolerances<T>) -> Result<(V, T)>
where
    T: Real,
    V: Integrand<T> + std::ops::Mul<Complex<T>, Output = V>,
    F: FnMut(Complex<T>) -> Result<V>,
{
    let mut total = V::zero();
    let mut err = T::zero();
    for piece in path.pieces() {
        let q = integrate_fallible(|s| Ok(f(piece.point(s))? * piece.velocity(s)), T::zero(), T::one(), tol)?;
        total = total.add(q.value);
        err = err + q.error_estimate;
    }
    Ok((total, err))
}

/// `\int_path f(z) dz` with its error estimate.
pub fn integrate_path<T, F>(mut f: F, path: &ComplexPath<T>, tol: &Tolerances<T>) -> Result<(Complex<T>, T)>
where
    T: Real,
    F: FnMut(Complex<T>) -> Complex<T>,
{
    integrate_path_with(|z| Ok(f(z)), path, tol)
}

/// Three complex integrals sharing one path, e.g. the components of a
/// Weierstrass form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex3<T>(pub [Complex<T>; 3]);

impl<T: Real> Integrand<T> for Complex3<T> {
    fn zero() -> Self {
        Complex3([Complex::new(T::zero(), T::zero()); 3])
    }
    fn add(self, o: Self) -> Self {
        Complex3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
    fn scale(self, s: T) -> Self {
        Complex3(self.0.map(|c| c * s))
    }
    fn magnitude(self) -> T {
        self.0.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }
}

impl<T: Real> std::ops::Mul<Complex<T>> for Complex3<T> {
    type Output = Self;
    fn mul(self, w: Complex<T>) -> Self {
        Complex3(self.0.map(|c| c * w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit() -> ComplexPath<f64> {
        ComplexPath::circle(Complex::new(0.0, 0.0), 1.0)
    }

    #[test]
    fn residue_theorem_examples() {
        let tol = Tolerances::default();
        let (v, _) = integrate_path(|z| z.inv(), &unit(), &tol).unwrap();
        assert!((v - Complex::new(0.0, 2.0 * PI)).norm() < 1e-12);
        let (v, _) = integrate_path(|z| z, &unit(), &tol).unwrap();
        assert!(v.norm() < 1e-12);
        let (v, _) = integrate_path(|z| (z * z).inv(), &unit(), &tol).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn clockwise_circle_negates() {
        let tol = Tolerances::default();
        let cw = ComplexPath::Circle { center: Complex::new(0.0, 0.0), radius: 1.0, turns: -1 };
        let (v, _) = integrate_path(|z| z.inv(), &cw, &tol).unwrap();
        assert!((v + Complex::new(0.0, 2.0 * PI)).norm() < 1e-12);
        assert_eq!(cw.winding_number(Complex::new(0.1, 0.0)), -1);
    }

    #[test]
    fn closed_square_matches_circle() {
        let tol = Tolerances::default();
        let sq = ComplexPath::Polyline {
            points: vec![
                Complex::new(-1.0, -1.0),
                Complex::new(1.0, -1.0),
                Complex::new(1.0, 1.0),
                Complex::new(-1.0, 1.0),
            ],
            closed: true,
        };
        assert_eq!(sq.winding_number(Complex::new(0.2, 0.3)), 1);
        assert_eq!(sq.winding_number(Complex::new(2.0, 0.3)), 0);
        let (v, _) = integrate_path(|z| z.inv(), &sq, &tol).unwrap();
        assert!((v - Complex::new(0.0, 2.0 * PI)).norm() < 1e-11);
        assert!((sq.end() - sq.start()).norm() < 1e-12);
    }

    #[test]
    fn clearance_violation_is_reported() {
        let err = unit().check_clearance(&[Complex::new(1.0 + 1e-4, 0.0)], 1e-2).unwrap_err();
        assert!(matches!(err, GeomError::PunctureClearance { .. }));
        unit().check_clearance(&[Complex::new(0.0, 0.0)], 0.5).unwrap();
    }
}
