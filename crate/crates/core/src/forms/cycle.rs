//! Closed curves in a surface's parameter domain.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::numeric::{integrate_fallible, Integrand, Quadrature, Tolerances};
use crate::scalar::Real;
use crate::surface::{Domain, ParametricSurface};

/// Shape of a cycle in `(u, v)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CycleShape<T> {
    /// `start + s * velocity` for `s` in `[0, length]`. Closed when the
    /// displacement is a whole number of periods of a periodic domain.
    Line { start: [T; 2], velocity: [T; 2], length: T },
    /// `center + radius (cos s, sin s)` for `s` in `[0, 2 pi |turns|]`,
    /// clockwise when `turns < 0`.
    Circle { center: [T; 2], radius: T, turns: i32 },
    /// Closed polygon, parametrized by cumulative parameter distance.
    Polygon { points: Vec<[T; 2]> },
}

/// A labelled closed curve `s in [0, L] -> (u, v)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cycle<T> {
    pub label: String,
    pub shape: CycleShape<T>,
    /// Set when `|x_*(gamma')| = 1` is claimed; checked by [`Cycle::validate`].
    pub unit_speed: bool,
}

impl<T: Real> Cycle<T> {
    pub fn line(label: impl Into<String>, start: [T; 2], velocity: [T; 2], length: T) -> Self {
        Self { label: label.into(), shape: CycleShape::Line { start, velocity, length }, unit_speed: false }
    }

    /// The full coordinate line `v = v0` of a domain periodic in `u`.
    pub fn u_loop(label: impl Into<String>, domain: &Domain<T>, v0: T) -> Self {
        let len = domain.u.1 - domain.u.0;
        Self::line(label, [domain.u.0, v0], [T::one(), T::zero()], len)
    }

    /// The full coordinate line `u = u0` of a domain periodic in `v`.
    pub fn v_loop(label: impl Into<String>, domain: &Domain<T>, u0: T) -> Self {
        let len = domain.v.1 - domain.v.0;
        Self::line(label, [u0, domain.v.0], [T::zero(), T::one()], len)
    }

    pub fn circle(label: impl Into<String>, center: [T; 2], radius: T) -> Self {
        Self { label: label.into(), shape: CycleShape::Circle { center, radius, turns: 1 }, unit_speed: false }
    }

    /// Counterclockwise square of side `h` centred at `p`.
    pub fn square(label: impl Into<String>, p: [T; 2], h: T) -> Self {
        let r = h / T::lit(2.0);
        let points = vec![[p[0] - r, p[1] - r], [p[0] + r, p[1] - r], [p[0] + r, p[1] + r], [p[0] - r, p[1] + r]];
        Self { label: label.into(), shape: CycleShape::Polygon { points }, unit_speed: false }
    }

    pub fn with_unit_speed(mut self, flag: bool) -> Self {
        self.unit_speed = flag;
        self
    }

    pub fn reversed(&self) -> Self {
        let shape = match &self.shape {
            CycleShape::Line { start, velocity, length } => CycleShape::Line {
                start: [start[0] + velocity[0] * *length, start[1] + velocity[1] * *length],
                velocity: [-velocity[0], -velocity[1]],
                length: *length,
            },
            CycleShape::Circle { center, radius, turns } => {
                CycleShape::Circle { center: *center, radius: *radius, turns: -turns }
            }
            CycleShape::Polygon { points } => {
                let mut p = points.clone();
                p.reverse();
                CycleShape::Polygon { points: p }
            }
        };
        Self { label: format!("-{}", self.label), shape, unit_speed: self.unit_speed }
    }

    /// Parameter length `L`.
    pub fn length(&self) -> T {
        match &self.shape {
            CycleShape::Line { length, .. } => *length,
            CycleShape::Circle { turns, .. } => T::TAU() * T::lit(turns.unsigned_abs() as f64),
            CycleShape::Polygon { points } => {
                let n = points.len();
                (0..n).map(|i| seg_len(points[i], points[(i + 1) % n])).sum()
            }
        }
    }

    /// Smooth pieces as `(s_start, s_end)`.
    pub fn pieces(&self) -> Vec<(T, T)> {
        match &self.shape {
            CycleShape::Polygon { points } => {
                let n = points.len();
                let mut out = Vec::with_capacity(n);
                let mut s = T::zero();
                for i in 0..n {
                    let l = seg_len(points[i], points[(i + 1) % n]);
                    out.push((s, s + l));
                    s = s + l;
                }
                out
            }
            _ => vec![(T::zero(), self.length())],
        }
    }

    /// `(gamma(s), gamma'(s))`.
    pub fn eval(&self, s: T) -> ([T; 2], [T; 2]) {
        match &self.shape {
            CycleShape::Line { start, velocity, .. } => {
                ([start[0] + velocity[0] * s, start[1] + velocity[1] * s], *velocity)
            }
            CycleShape::Circle { center, radius, turns } => {
                let sign = if *turns < 0 { -T::one() } else { T::one() };
                let a = s * sign;
                (
                    [center[0] + *radius * a.cos(), center[1] + *radius * a.sin()],
                    [-*radius * a.sin() * sign, *radius * a.cos() * sign],
                )
            }
            CycleShape::Polygon { points } => {
                let n = points.len();
                let mut rem = s;
                for i in 0..n {
                    let (a, b) = (points[i], points[(i + 1) % n]);
                    let l = seg_len(a, b);
                    if rem <= l || i == n - 1 {
                        let d = [(b[0] - a[0]) / l, (b[1] - a[1]) / l];
                        return ([a[0] + d[0] * rem, a[1] + d[1] * rem], d);
                    }
                    rem = rem - l;
                }
                unreachable!("polygon has at least one edge")
            }
        }
    }

    /// Checks closure in `domain` (to `1e-10`) and, if claimed, unit speed
    /// on `surface` (to `1e-8`) at 64 sample points.
    pub fn validate(&self, surface: &ParametricSurface<T>) -> Result<()> {
        let domain = surface.domain();
        let (a, _) = self.eval(T::zero());
        let (b, _) = self.eval(self.length());
        let gap = |x: T, y: T, periodic: bool, range: (T, T)| {
            let d = y - x;
            if periodic {
                let p = range.1 - range.0;
                (d - (d / p).round() * p).abs()
            } else {
                d.abs()
            }
        };
        let g = gap(a[0], b[0], domain.periodic_u, domain.u).max(gap(a[1], b[1], domain.periodic_v, domain.v));
        if g > T::lit(1e-10) {
            return Err(GeomError::InvalidParameters(format!(
                "cycle '{}' does not close: endpoint gap {:e}",
                self.label,
                g.to_f64_lossy()
            )));
        }
        if self.unit_speed {
            let n = 64;
            for k in 0..n {
                let s = self.length() * T::lit(k as f64) / T::lit(n as f64);
                let (p, d) = self.eval(s);
                let j = surface.jet(p[0], p[1])?;
                let speed = (j.xu * d[0] + j.xv * d[1]).norm();
                if (speed - T::one()).abs() > T::lit(1e-8) {
                    return Err(GeomError::InvalidParameters(format!(
                        "cycle '{}' is not unit speed: |x_*(gamma')| = {} at s = {}",
                        self.label, speed, s
                    )));
                }
            }
        }
        Ok(())
    }

    /// `int_0^L f(s) ds`, piece by piece.
    pub fn integrate<V, F>(&self, mut f: F, tol: &Tolerances<T>) -> Result<Quadrature<V, T>>
    where
        V: Integrand<T>,
        F: FnMut(T) -> Result<V>,
    {
        let mut out = Quadrature { value: V::zero(), error_estimate: T::zero(), evaluations: 0 };
        for (a, b) in self.pieces() {
            let q = integrate_fallible(&mut f, a, b, tol)?;
            out.value = out.value.add(q.value);
            out.error_estimate = out.error_estimate + q.error_estimate;
            out.evaluations += q.evaluations;
        }
        Ok(out)
    }
}

fn seg_len<T: Real>(a: [T; 2], b: [T; 2]) -> T {
    ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_perimeter_and_closure() {
        let c = Cycle::square("sq", [0.5, 0.5], 0.2);
        assert!((c.length() - 0.8_f64).abs() < 1e-15);
        let (a, _) = c.eval(0.0);
        let (b, _) = c.eval(c.length());
        assert!((a[0] - b[0]).abs() + (a[1] - b[1]).abs() < 1e-15);
        let q = c.integrate(|s| Ok(c.eval(s).1[0] * c.eval(s).0[1]), &Tolerances::default()).unwrap();
        // int v du around a ccw square = -area
        assert!((q.value + 0.04).abs() < 1e-14);
    }

    #[test]
    fn clockwise_circle_reverses_velocity() {
        let c = Cycle::<f64>::circle("c", [0.0, 0.0], 2.0);
        let r = c.reversed();
        let (p, d) = r.eval(0.3);
        let (q, e) = c.eval(-0.3);
        assert!((p[1] - q[1]).abs() < 1e-15);
        assert!((d[0] + e[0]).abs() < 1e-15 && (d[1] + e[1]).abs() < 1e-15);
    }
}
