//! Delaunay surfaces from their profile curve.
//!
//! The profile `(r(u), z(u))` is integrated in the conformal parameter
//! `u` (arclength `ds = r du`):
//!
//! ```text
//! r' = r cos psi,   z' = r sin psi,   psi' = 2 H r - sin psi
//! ```
//!
//! which conserves `F = r sin psi - H r^2`. The surface is
//! `(r cos v, r sin v, z)` and `(u, v)` are isothermal.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::forms::Cycle;
use crate::numeric::{ode_solve, Jet, Trajectory, Vec3};
use crate::scalar::Real;
use crate::surface::{Domain, ParametricSurface};

use super::CatalogEntry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DelaunayBranch {
    /// `0 < a < 1/(4|H|)`: embedded.
    Unduloid,
    /// `a < 0`: the profile loops.
    Nodoid,
    /// `a = 1/(4|H|)`.
    Cylinder,
    /// `a = 0`: a chain of spheres, degenerate at the touching points.
    SphereChain,
}

/// Mean curvature and conserved quantity of a Delaunay surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DelaunayParams<T> {
    pub h: T,
    pub a: T,
    pub branch: DelaunayBranch,
}

impl<T: Real> DelaunayParams<T> {
    pub fn new(h: T, a: T) -> Result<Self> {
        if h == T::zero() || !h.is_finite() || !a.is_finite() {
            return Err(GeomError::InvalidParameters(format!("need finite H != 0 and a, got H = {h}, a = {a}")));
        }
        let cyl = T::one() / (T::lit(4.0) * h.abs());
        let branch = if (a - cyl).abs() <= T::lit(1e-12) * cyl {
            DelaunayBranch::Cylinder
        } else if a > cyl {
            return Err(GeomError::InvalidParameters(format!("a = {a} exceeds 1/(4|H|) = {cyl}: no profile")));
        } else if a > T::zero() {
            DelaunayBranch::Unduloid
        } else if a < T::zero() {
            DelaunayBranch::Nodoid
        } else {
            DelaunayBranch::SphereChain
        };
        Ok(Self { h, a, branch })
    }
}

/// Summary of an integrated profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSummary {
    /// Conformal period: the distance in `u` between consecutive necks.
    pub period: f64,
    /// `max |F - a|` over one period.
    pub drift: f64,
    pub neck_radius: f64,
    pub max_radius: f64,
    /// Axial advance over one period.
    pub translation: f64,
    /// `sin psi > 0` along the whole period, i.e. the profile is a graph
    /// over the axis.
    pub embedded: bool,
}

type Rhs<T> = Box<dyn Fn(T, &[T; 3]) -> [T; 3] + Send + Sync>;

fn rhs<T: Real>(h: T) -> Rhs<T> {
    Box::new(move |_s: T, y: &[T; 3]| {
        let (sp, cp) = y[2].sin_cos();
        [y[0] * cp, y[0] * sp, T::lit(2.0) * h * y[0] - sp]
    })
}

fn initial_state<T: Real>(h: T, a: T) -> [T; 3] {
    let root = (T::one() - T::lit(4.0) * h * a).sqrt();
    if a > T::zero() {
        [(T::one() - root) / (T::lit(2.0) * h), T::zero(), T::FRAC_PI_2()]
    } else {
        [(root - T::one()) / (T::lit(2.0) * h), T::zero(), -T::FRAC_PI_2()]
    }
}

fn solve<T: Real>(h: T, y0: [T; 3], length: T, tol: T) -> Result<Trajectory<T, 3, Rhs<T>>> {
    let guard = |y: &[T; 3]| {
        if y[0] < T::lit(1e-9) {
            Some(format!("profile radius collapses (r = {})", y[0]))
        } else {
            None
        }
    };
    ode_solve(rhs(h), y0, (T::zero(), length), tol, Some(&guard))
}

/// First neck after `u = 0`: the point where `cos psi` changes sign from
/// negative to positive.
fn find_period<T: Real>(traj: &Trajectory<T, 3, Rhs<T>>) -> Option<T> {
    let nodes = traj.nodes();
    for w in nodes.windows(2) {
        let (s0, y0) = w[0];
        let (s1, y1) = w[1];
        if y0[2].cos() < T::zero() && y1[2].cos() >= T::zero() {
            let (mut lo, mut hi) = (s0, s1);
            for _ in 0..200 {
                let mid = (lo + hi) / T::lit(2.0);
                if mid <= lo || mid >= hi {
                    break;
                }
                if traj.eval(mid)[2].cos() < T::zero() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some((lo + hi) / T::lit(2.0));
        }
    }
    None
}

/// An integrated Delaunay surface together with its profile summary.
#[derive(Clone)]
pub struct DelaunayProfile<T> {
    pub params: DelaunayParams<T>,
    pub surface: ParametricSurface<T>,
    pub summary: ProfileSummary,
}

/// Integrates the profile of `params` over one period on each side of the
/// neck `u = 0` and returns the surface on `[-P, P] x [0, 2 pi)`.
///
/// For `H < 0` the surface is built from `|H|` with the orientation
/// reversed. `a = 0` is refused as a singularity: the profile reaches the
/// axis.
pub fn delaunay_profile<T: Real>(params: DelaunayParams<T>, ode_tol: T) -> Result<DelaunayProfile<T>> {
    let h = params.h.abs();
    let a = params.a;
    if params.branch == DelaunayBranch::SphereChain {
        return Err(GeomError::OdeSingularity {
            at: 0.0,
            reason: "a = 0: the profile meets the axis (sphere chain)".into(),
        });
    }
    let y0 = if params.branch == DelaunayBranch::Cylinder {
        [T::one() / (T::lit(2.0) * h), T::zero(), T::FRAC_PI_2()]
    } else {
        initial_state(h, a)
    };

    let (traj, period) = if params.branch == DelaunayBranch::Cylinder {
        let p = T::PI();
        (solve(h, y0, p * T::lit(1.5), ode_tol)?, p)
    } else {
        let mut length = T::lit(20.0);
        loop {
            let traj = solve(h, y0, length, ode_tol)?;
            if let Some(p) = find_period(&traj) {
                if p * T::lit(1.25) < length {
                    break (traj, p);
                }
                break (solve(h, y0, p * T::lit(1.5), ode_tol)?, p);
            }
            if length > T::lit(5000.0) {
                return Err(GeomError::OdeSingularity {
                    at: length.to_f64_lossy(),
                    reason: "no second neck found".into(),
                });
            }
            length = length * T::lit(2.0);
        }
    };

    let mut drift = T::zero();
    let mut embedded = true;
    for (s, y) in traj.nodes() {
        if *s > period {
            break;
        }
        let f = y[0] * y[2].sin() - h * y[0] * y[0];
        drift = drift.max((f - a).abs());
        embedded &= y[2].sin() > T::zero();
    }
    let end = traj.eval(period);
    let summary = ProfileSummary {
        period: period.to_f64_lossy(),
        drift: drift.to_f64_lossy(),
        neck_radius: y0[0].to_f64_lossy(),
        // widest point is half way between necks
        max_radius: traj.eval(period / T::lit(2.0))[0].to_f64_lossy(),
        translation: end[1].to_f64_lossy(),
        embedded,
    };

    let traj = Arc::new(traj);
    let sigma = if params.h > T::zero() { T::one() } else { -T::one() };
    let domain = Domain::rect((-period, period), (T::zero(), T::TAU())).periodic_in_v();
    let name = format!("delaunay(H={}, a={})", params.h, a);
    let eval_traj = Arc::clone(&traj);
    let surface = ParametricSurface::new(name, domain, Some(params.h), move |u: T, v: T| {
        // The profile is symmetric about the neck: (r, z, psi)(-u) =
        // (r, -z, pi - psi)(u).
        let [r, z, psi] = if u >= T::zero() {
            eval_traj.eval(u)
        } else {
            let y = eval_traj.eval(-u);
            [y[0], -y[1], T::PI() - y[2]]
        };
        let (sp, cp) = psi.sin_cos();
        let r1 = r * cp;
        let z1 = r * sp;
        let psi1 = T::lit(2.0) * h * r - sp;
        let r2 = r1 * cp - r * sp * psi1;
        let z2 = r1 * sp + r * cp * psi1;
        let (sv, cv) = (sigma * v).sin_cos();
        Ok(Jet {
            x: Vec3::new(r * cv, r * sv, z),
            xu: Vec3::new(r1 * cv, r1 * sv, z1),
            xv: Vec3::new(-r * sv, r * cv, T::zero()) * sigma,
            xuu: Vec3::new(r2 * cv, r2 * sv, z2),
            xuv: Vec3::new(-r1 * sv, r1 * cv, T::zero()) * sigma,
            xvv: Vec3::new(-r * cv, -r * sv, T::zero()),
        })
    });
    Ok(DelaunayProfile { params, surface, summary })
}

/// Catalog entry for a Delaunay surface. Cycles: `neck` (`u = 0`) and
/// `bulge` (`u = P/2`).
pub fn delaunay<T: Real>(params: DelaunayParams<T>, ode_tol: T) -> Result<CatalogEntry<T>> {
    let p = delaunay_profile(params, ode_tol)?;
    let domain = p.surface.domain().clone();
    let half = T::lit(p.summary.period / 2.0);
    let name = match params.branch {
        DelaunayBranch::Unduloid => "unduloid",
        DelaunayBranch::Nodoid => "nodoid",
        DelaunayBranch::Cylinder => "delaunay-cylinder",
        DelaunayBranch::SphereChain => unreachable!("refused above"),
    };
    Ok(CatalogEntry {
        name: name.into(),
        surface: p.surface,
        known_h: Some(params.h),
        k_range: None,
        cycles: vec![Cycle::v_loop("neck", &domain, T::zero()), Cycle::v_loop("bulge", &domain, half)],
        notes: format!(
            "H = {}, a = {}, period {:.6}, neck radius {:.6}, embedded {}",
            params.h, params.a, p.summary.period, p.summary.neck_radius, p.summary.embedded
        ),
        conjugate: None,
        weierstrass: None,
        poles: Vec::new(),
    })
}
