//! Planar cross-sections: the force component normal to a plane, the
//! symmetric-plane criterion and the smallest enclosing circle.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::numeric::{Tolerances, Vec3};
use crate::scalar::Real;
use crate::surface::{apply_j, frame_at, ParametricSurface};

use super::cycle::Cycle;
use super::oneform::constant_mean_curvature;

/// Transversality threshold: `|<x_*(J gamma'), V>|` must stay above this.
pub const TRANSVERSALITY_TOL: f64 = 1e-6;

/// Allowed deviation of `<x o gamma, V>` from a constant.
pub const PLANARITY_TOL: f64 = 1e-8;

/// Samples used for the planarity, symmetry and enclosing-circle checks.
const CHECK_SAMPLES: usize = 256;

/// Pointwise data along a cycle, per unit arclength.
#[derive(Debug, Clone, Copy)]
struct SectionSample<T> {
    position: Vec3<T>,
    normal: Vec3<T>,
    /// `x_*(J gamma') / |x_*(gamma')|`: the unit conormal.
    conormal: Vec3<T>,
    speed: T,
}

fn section_sample<T: Real>(surface: &ParametricSurface<T>, cycle: &Cycle<T>, s: T) -> Result<SectionSample<T>> {
    let (p, d) = cycle.eval(s);
    let frame = frame_at(surface, p[0], p[1])?;
    let speed = frame.norm(d.into());
    let conormal = frame.push(apply_j(&frame, d.into())) / speed;
    Ok(SectionSample { position: frame.position(), normal: frame.normal, conormal, speed })
}

/// Arclength from the start of `cycle` to parameter `s`.
fn arclength_to<T: Real>(surface: &ParametricSurface<T>, cycle: &Cycle<T>, s: T, tol: &Tolerances<T>) -> T {
    let partial = Cycle::line("partial", [T::zero(), T::zero()], [T::one(), T::zero()], s);
    partial
        .integrate(|r| section_sample(surface, cycle, r).map(|x| x.speed), tol)
        .map(|q| q.value)
        .unwrap_or_else(|_| T::nan())
}

fn plane_offset<T: Real>(surface: &ParametricSurface<T>, cycle: &Cycle<T>, normal: Vec3<T>) -> Result<T> {
    let l = cycle.length();
    let mut offsets = Vec::with_capacity(CHECK_SAMPLES);
    for k in 0..CHECK_SAMPLES {
        let s = l * T::lit(k as f64) / T::lit(CHECK_SAMPLES as f64);
        offsets.push(section_sample(surface, cycle, s)?.position.dot(normal));
    }
    let c = offsets[0];
    let dev = offsets.iter().map(|o| (*o - c).abs()).fold(T::zero(), T::max);
    if dev > T::lit(PLANARITY_TOL) {
        return Err(GeomError::Precondition(format!(
            "cycle '{}' is not planar: <x, V> varies by {:e}",
            cycle.label,
            dev.to_f64_lossy()
        )));
    }
    Ok(c)
}

/// Result of [`cross_section_force`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossSection {
    pub value: f64,
    pub error_estimate: f64,
    /// `<x o gamma, V>`: the origin is moved by this much along `V`.
    pub plane_offset: f64,
    pub length: f64,
}

/// `int_0^L (a^2 + H <x o gamma, xi>) / a ds` in arclength, with
/// `a = <x_*(J gamma'), V>` and the origin moved into the plane of the
/// curve. Equals the force component along `V` for a planar cycle.
///
/// The cycle need not be unit speed: the integral is taken in the cycle's
/// own parameter with `ds = |x_*(gamma')| dt`.
pub fn cross_section_force<T: Real>(
    surface: &ParametricSurface<T>,
    plane_normal: Vec3<T>,
    cycle: &Cycle<T>,
    tol: &Tolerances<T>,
) -> Result<CrossSection> {
    cycle.validate(surface)?;
    let h = constant_mean_curvature(surface)?;
    let v = plane_normal.normalized().ok_or_else(|| GeomError::InvalidParameters("zero plane normal".into()))?;
    let offset = plane_offset(surface, cycle, v)?;
    let origin = v * offset;

    let q = cycle.integrate(
        |s| {
            let x = section_sample(surface, cycle, s)?;
            let a = x.conormal.dot(v);
            if a.abs() < T::lit(TRANSVERSALITY_TOL) {
                return Err(GeomError::TransversalityFailure {
                    arclength: arclength_to(surface, cycle, s, tol).to_f64_lossy(),
                    value: a.abs().to_f64_lossy(),
                });
            }
            Ok((a * a + h * (x.position - origin).dot(x.normal)) / a * x.speed)
        },
        tol,
    )?;
    let length = cycle.integrate(|s| section_sample(surface, cycle, s).map(|x| x.speed), tol)?;
    Ok(CrossSection {
        value: q.value.to_f64_lossy(),
        error_estimate: q.error_estimate.to_f64_lossy(),
        plane_offset: offset.to_f64_lossy(),
        length: length.value.to_f64_lossy(),
    })
}

/// A circle in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle2<T> {
    pub center: [T; 2],
    pub radius: T,
}

impl<T: Real> Circle2<T> {
    pub fn contains(&self, p: [T; 2], slack: T) -> bool {
        dist(self.center, p) <= self.radius + slack
    }
}

fn dist<T: Real>(a: [T; 2], b: [T; 2]) -> T {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

fn from_two<T: Real>(a: [T; 2], b: [T; 2]) -> Circle2<T> {
    let half = T::lit(0.5);
    Circle2 { center: [(a[0] + b[0]) * half, (a[1] + b[1]) * half], radius: dist(a, b) * half }
}

/// Circumcircle, or `None` for collinear points.
fn from_three<T: Real>(a: [T; 2], b: [T; 2], c: [T; 2]) -> Option<Circle2<T>> {
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = T::lit(2.0) * (bx * cy - by * cx);
    if d.abs() <= T::eps() * (bx.abs() + by.abs()) * (cx.abs() + cy.abs()) * T::lit(16.0) {
        return None;
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    Some(Circle2 { center: [a[0] + ux, a[1] + uy], radius: (ux * ux + uy * uy).sqrt() })
}

/// Smallest circle containing every point, by the incremental support-set
/// construction (each new outside point must lie on the boundary).
/// Deterministic: points are processed in the given order.
pub fn smallest_enclosing_circle<T: Real>(points: &[[T; 2]]) -> Option<Circle2<T>> {
    let first = *points.first()?;
    let slack = |c: &Circle2<T>| T::lit(1e-12) * (T::one() + c.radius);
    let mut c = Circle2 { center: first, radius: T::zero() };
    for i in 1..points.len() {
        if c.contains(points[i], slack(&c)) {
            continue;
        }
        c = Circle2 { center: points[i], radius: T::zero() };
        for j in 0..i {
            if c.contains(points[j], slack(&c)) {
                continue;
            }
            c = from_two(points[i], points[j]);
            for k in 0..j {
                if c.contains(points[k], slack(&c)) {
                    continue;
                }
                c = from_three(points[i], points[j], points[k]).unwrap_or_else(|| {
                    // Collinear: the widest pair spans the circle.
                    let pairs = [(points[i], points[j]), (points[i], points[k]), (points[j], points[k])];
                    pairs.into_iter().map(|(a, b)| from_two(a, b)).fold(c, |best, cand| {
                        if cand.radius > best.radius {
                            cand
                        } else {
                            best
                        }
                    })
                });
            }
        }
    }
    Some(c)
}

/// Brute-force reference: the smallest among all two- and three-point
/// circles that contain every point. `O(n^4)`; for testing.
pub fn smallest_enclosing_circle_brute<T: Real>(points: &[[T; 2]]) -> Option<Circle2<T>> {
    let n = points.len();
    if n == 1 {
        return Some(Circle2 { center: points[0], radius: T::zero() });
    }
    let mut best: Option<Circle2<T>> = None;
    let mut consider = |c: Circle2<T>| {
        let slack = T::lit(1e-9) * (T::one() + c.radius);
        if points.iter().all(|p| c.contains(*p, slack)) && best.is_none_or(|b| c.radius < b.radius) {
            best = Some(c);
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            consider(from_two(points[i], points[j]));
            for k in j + 1..n {
                if let Some(c) = from_three(points[i], points[j], points[k]) {
                    consider(c);
                }
            }
        }
    }
    best
}

/// Result of [`alexandrov_criterion`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlexandrovReport {
    /// `L + H int <x o gamma, xi> ds`, the force component along the plane
    /// normal.
    pub value: f64,
    pub error_estimate: f64,
    pub length: f64,
    pub enclosing_radius: f64,
    /// `1 / |H|`.
    pub radius_bound: f64,
    /// The curve fits in an open disc of radius `1/|H|`, so the family of
    /// isometric deformations is finite.
    pub finite_family: bool,
}

/// For a cycle in a plane of symmetry (`a = <x_*(J gamma'), V> = 1`
/// throughout): the force component `L + H int <x, xi> ds` and whether the
/// curve fits inside an open disc of radius `1/|H|`.
pub fn alexandrov_criterion<T: Real>(
    surface: &ParametricSurface<T>,
    plane_normal: Vec3<T>,
    cycle: &Cycle<T>,
    tol: &Tolerances<T>,
) -> Result<AlexandrovReport> {
    cycle.validate(surface)?;
    let h = constant_mean_curvature(surface)?;
    if h.abs() < T::lit(super::oneform::CONSTANT_H_TOL) {
        return Err(GeomError::Precondition("criterion needs H != 0".into()));
    }
    let v = plane_normal.normalized().ok_or_else(|| GeomError::InvalidParameters("zero plane normal".into()))?;
    let offset = plane_offset(surface, cycle, v)?;
    let origin = v * offset;

    // In-plane orthonormal basis for the enclosing circle.
    let helper = if v.x.abs() < T::lit(0.9) { Vec3::e1() } else { Vec3::e2() };
    let b1 = (helper - v * helper.dot(v)).normalized().expect("independent helper");
    let b2 = v.cross(b1);
    let l = cycle.length();
    let mut planar = Vec::with_capacity(CHECK_SAMPLES);
    for k in 0..CHECK_SAMPLES {
        let s = l * T::lit(k as f64) / T::lit(CHECK_SAMPLES as f64);
        let x = section_sample(surface, cycle, s)?;
        let a = x.conormal.dot(v);
        if (a - T::one()).abs() > T::lit(TRANSVERSALITY_TOL) {
            return Err(GeomError::Precondition(format!(
                "cycle '{}' is not in a plane of symmetry: a = {} at s = {}",
                cycle.label, a, s
            )));
        }
        let p = x.position - origin;
        planar.push([p.dot(b1), p.dot(b2)]);
    }
    let circle = smallest_enclosing_circle(&planar).expect("nonempty sample");

    let q = cycle.integrate(
        |s| {
            let x = section_sample(surface, cycle, s)?;
            Ok((T::one() + h * (x.position - origin).dot(x.normal)) * x.speed)
        },
        tol,
    )?;
    let length = cycle.integrate(|s| section_sample(surface, cycle, s).map(|x| x.speed), tol)?;
    let bound = T::one() / h.abs();
    Ok(AlexandrovReport {
        value: q.value.to_f64_lossy(),
        error_estimate: q.error_estimate.to_f64_lossy(),
        length: length.value.to_f64_lossy(),
        enclosing_radius: circle.radius.to_f64_lossy(),
        radius_bound: bound.to_f64_lossy(),
        finite_family: circle.radius < bound,
    })
}
