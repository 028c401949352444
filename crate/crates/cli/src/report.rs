//! The JSON run report.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use cmc_core::forms::{AlexandrovReport, CrossSection, PeriodReport};
use cmc_core::verdict::{LabelledPeriod, Verdict};
use cmc_core::Tolerances;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TolSummary {
    pub quad_abs: f64,
    pub quad_rel: f64,
    pub quad_max_level: u32,
    pub ode_tol: f64,
    pub fd_step: f64,
}

impl From<&Tolerances> for TolSummary {
    fn from(t: &Tolerances) -> Self {
        Self {
            quad_abs: t.quad_abs,
            quad_rel: t.quad_rel,
            quad_max_level: t.quad_max_level,
            ode_tol: t.ode_tol,
            fd_step: t.fd_step,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossSectionResult {
    pub cycle: String,
    pub plane_normal: [f64; 3],
    pub section: CrossSection,
    /// Present when the cycle lies in a plane of symmetry and `H != 0`.
    pub alexandrov: Option<AlexandrovReport>,
    /// Why the disc-radius criterion was not evaluated.
    pub alexandrov_skipped: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssociateResult {
    pub t: f64,
    pub points: usize,
    /// `max |g_t - g_0| / (1 + |g_0|)` over the check grid.
    pub metric_drift: f64,
    /// `max |H_t|`.
    pub max_abs_h: f64,
    /// `max |K_t - K_0|`.
    pub gauss_drift: f64,
}

/// One verdict with the source it was derived from.
#[derive(Debug, Clone, Serialize)]
pub struct NamedVerdict {
    /// `force-torque` or `weierstrass`.
    pub test: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: String,
    pub input_digest: String,
    pub tolerances: TolSummary,
    pub mean_curvature: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub periods: Vec<PeriodReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub weierstrass_periods: Vec<LabelledPeriod>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cross_sections: Vec<CrossSectionResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub associate: Option<AssociateResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<NamedVerdict>,
    /// Overall verdict, the most severe of `verdicts`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Largest quadrature error estimate among the reported integrals.
    pub max_error_estimate: f64,
    pub wall_clock_seconds: f64,
}

impl RunReport {
    pub fn new(command: &str, input: &str, digest: &str, tol: &Tolerances) -> Self {
        Self {
            tool: "cmc",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            input: input.into(),
            input_digest: digest.into(),
            tolerances: tol.into(),
            mean_curvature: None,
            periods: Vec::new(),
            weierstrass_periods: Vec::new(),
            cross_sections: Vec::new(),
            associate: None,
            verdicts: Vec::new(),
            verdict: None,
            notes: Vec::new(),
            max_error_estimate: 0.0,
            wall_clock_seconds: 0.0,
        }
    }

    pub fn note_error(&mut self, e: Option<f64>) {
        if let Some(e) = e {
            self.max_error_estimate = self.max_error_estimate.max(e);
        }
    }

    pub fn finish(mut self, started: Instant) -> Self {
        self.wall_clock_seconds = started.elapsed().as_secs_f64();
        self
    }

    /// Writes pretty JSON to `path`, or to `stdout` when `path` is `None`.
    pub fn emit(&self, path: Option<&Path>, stdout: &mut dyn std::io::Write) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        match path {
            Some(p) => std::fs::write(p, text + "\n")?,
            None => writeln!(stdout, "{text}")?,
        }
        Ok(())
    }
}

fn severity(v: &Verdict) -> u8 {
    match v {
        Verdict::CirclePossible => 0,
        Verdict::Finite { .. } => 1,
        Verdict::IllDefined { .. } => 2,
    }
}

/// The most severe verdict; ties keep the first.
pub fn combine(verdicts: &[NamedVerdict]) -> Option<Verdict> {
    let mut best: Option<&Verdict> = None;
    for v in verdicts {
        if best.is_none_or(|b| severity(&v.verdict) > severity(b)) {
            best = Some(&v.verdict);
        }
    }
    best.cloned()
}
