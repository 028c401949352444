//! Finite-or-circle verdicts from the period obstructions.
//!
//! All tests here are necessary conditions: a vanishing obstruction never
//! proves that an associate deformation exists.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::forms::{constant_mean_curvature, period_report, Cycle, PeriodReport, CONSTANT_H_TOL};
use crate::numeric::{ComplexPath, Tolerances, Vec3};
use crate::scalar::Real;
use crate::surface::ParametricSurface;
use crate::weierstrass::{PeriodEngine, PeriodSummary};

/// Magnitude above which a period counts as an obstruction.
pub const OBSTRUCTION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    Force,
    Torque,
    /// Real part of a Weierstrass period: the immersion itself is not
    /// single valued.
    RealPeriod,
    /// Imaginary part of a Weierstrass period: the conjugate is not single
    /// valued.
    ImaginaryPeriod,
}

/// The largest obstruction seen, with the cycle carrying it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub cycle: String,
    pub kind: ObstructionKind,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// Every tested obstruction vanishes.
    CirclePossible,
    /// A nonzero force or torque (or imaginary period): at most finitely
    /// many associate surfaces close up.
    Finite { witness: Witness },
    /// The data do not define a surface on the given domain.
    IllDefined { witness: Witness },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::CirclePossible => "CIRCLE-POSSIBLE",
            Verdict::Finite { .. } => "FINITE",
            Verdict::IllDefined { .. } => "ILL-DEFINED",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::CirclePossible => None,
            Verdict::Finite { witness } | Verdict::IllDefined { witness } => Some(witness),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness() {
            None => write!(f, "{}", self.label()),
            Some(w) => write!(f, "{} (witness {}: {:?} of size {:.6e})", self.label(), w.cycle, w.kind, w.magnitude),
        }
    }
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Force on every cycle and, when `H != 0`, torque about `origin`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceDeformability {
    pub surface: String,
    pub mean_curvature: f64,
    pub periods: Vec<PeriodReport>,
    pub verdict: Verdict,
}

/// Force periods are always tested. Torques are tested only for `H != 0`
/// (for minimal surfaces the force alone is the conjugate's period) and
/// only when every force vanishes, since otherwise they depend on the
/// origin.
pub fn surface_deformability<T: Real>(
    surface: &ParametricSurface<T>,
    cycles: &[Cycle<T>],
    origin: Vec3<T>,
    tol: &Tolerances<T>,
) -> Result<SurfaceDeformability> {
    let h = constant_mean_curvature(surface)?;
    let with_torque = h.abs() >= T::lit(CONSTANT_H_TOL);
    let periods =
        cycles.iter().map(|c| period_report(surface, c, true, with_torque, origin, tol)).collect::<Result<Vec<_>>>()?;
    // Largest magnitude; cycles within rounding of it resolve to the
    // first one declared.
    let worst = |pick: fn(&PeriodReport) -> Option<[f64; 3]>, kind| {
        let all: Vec<Witness> = periods
            .iter()
            .filter_map(|p| pick(p).map(|v| Witness { cycle: p.cycle.clone(), kind, magnitude: norm3(&v) }))
            .collect();
        let top = all.iter().map(|w| w.magnitude).fold(f64::NEG_INFINITY, f64::max);
        all.into_iter().find(|w| w.magnitude >= top - 1e-9 * (1.0 + top))
    };
    let force = worst(|p| p.force, ObstructionKind::Force);
    let torque = worst(|p| p.torque, ObstructionKind::Torque);
    let verdict = match (force, torque) {
        (Some(w), _) if w.magnitude > OBSTRUCTION_TOL => Verdict::Finite { witness: w },
        (_, Some(w)) if w.magnitude > OBSTRUCTION_TOL => Verdict::Finite { witness: w },
        _ => Verdict::CirclePossible,
    };
    Ok(SurfaceDeformability { surface: surface.name().to_string(), mean_curvature: h.to_f64_lossy(), periods, verdict })
}

/// A Weierstrass period with the label of its cycle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelledPeriod {
    pub cycle: String,
    #[serde(flatten)]
    pub period: PeriodSummary,
}

/// Weierstrass periods on a set of generators and the resulting verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeierstrassDeformability {
    pub periods: Vec<LabelledPeriod>,
    /// Every residue-oracle period is exactly zero.
    pub oracle_all_zero: bool,
    pub verdict: Verdict,
}

pub fn weierstrass_deformability<T: Real>(
    engine: &PeriodEngine<T>,
    generators: &[(String, ComplexPath<T>)],
    tol: &Tolerances<T>,
) -> Result<WeierstrassDeformability> {
    let mut periods = Vec::new();
    let mut oracle_all_zero = true;
    let mut re: Option<Witness> = None;
    let mut im: Option<Witness> = None;
    let keep = |slot: &mut Option<Witness>, w: Witness| {
        if slot.as_ref().is_none_or(|s| w.magnitude > s.magnitude) {
            *slot = Some(w);
        }
    };
    for (label, path) in generators {
        let p = engine.period(path, tol)?;
        oracle_all_zero &= p.oracle_is_exactly_zero();
        keep(&mut re, Witness { cycle: label.clone(), kind: ObstructionKind::RealPeriod, magnitude: p.max_abs_re() });
        keep(
            &mut im,
            Witness { cycle: label.clone(), kind: ObstructionKind::ImaginaryPeriod, magnitude: p.max_abs_im() },
        );
        periods.push(LabelledPeriod { cycle: label.clone(), period: p.summary() });
    }
    let verdict = match (re, im) {
        (Some(w), _) if w.magnitude > OBSTRUCTION_TOL => Verdict::IllDefined { witness: w },
        (_, Some(w)) if w.magnitude > OBSTRUCTION_TOL => Verdict::Finite { witness: w },
        _ => Verdict::CirclePossible,
    };
    Ok(WeierstrassDeformability { periods, oracle_all_zero, verdict })
}
