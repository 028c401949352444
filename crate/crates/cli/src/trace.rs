//! Per-arclength integrand samples along cycles, for plotting.

use std::path::Path;

use serde::Serialize;

use cmc_core::forms::{force_form, torque_form};
use cmc_core::surface::{apply_j, frame_at};
use cmc_core::{Cycle, Surface, Vec3};

/// Samples per cycle.
pub const TRACE_SAMPLES: usize = 256;

#[derive(Debug, Clone, Serialize)]
pub struct PeriodRow {
    pub cycle: String,
    pub s: f64,
    /// Trapezoidal arclength from the start of the cycle.
    pub arclength: f64,
    pub u: f64,
    pub v: f64,
    pub force_x: Option<f64>,
    pub force_y: Option<f64>,
    pub force_z: Option<f64>,
    pub torque_x: Option<f64>,
    pub torque_y: Option<f64>,
    pub torque_z: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionRow {
    pub cycle: String,
    pub s: f64,
    pub arclength: f64,
    pub u: f64,
    pub v: f64,
    /// `<unit conormal, V>`.
    pub a: f64,
    /// `(a^2 + H <x - o, xi>) / a`.
    pub integrand: f64,
}

fn param(cycle: &Cycle, k: usize) -> f64 {
    cycle.length() * k as f64 / TRACE_SAMPLES as f64
}

/// Force and torque integrands `form(gamma') / |x_*(gamma')|`.
pub fn period_rows(
    surface: &Surface,
    cycle: &Cycle,
    with_force: bool,
    with_torque: bool,
    origin: Vec3,
) -> anyhow::Result<Vec<PeriodRow>> {
    let force = if with_force { Some(force_form(surface)?) } else { None };
    let torque = if with_torque { Some(torque_form(surface, origin)?) } else { None };
    let mut rows = Vec::with_capacity(TRACE_SAMPLES + 1);
    let mut arclength = 0.0;
    let mut last: Option<(f64, f64)> = None;
    for k in 0..=TRACE_SAMPLES {
        let s = param(cycle, k);
        let (p, d) = cycle.eval(s);
        let frame = frame_at(surface, p[0], p[1])?;
        let speed = frame.norm(d.into());
        if let Some((s0, v0)) = last {
            arclength += 0.5 * (s - s0) * (speed + v0);
        }
        last = Some((s, speed));
        let f = force.as_ref().map(|w| w.at_frame(&frame, d.into())).transpose()?.map(|v| v / speed);
        let t = torque.as_ref().map(|w| w.at_frame(&frame, d.into())).transpose()?.map(|v| v / speed);
        rows.push(PeriodRow {
            cycle: cycle.label.clone(),
            s,
            arclength,
            u: p[0],
            v: p[1],
            force_x: f.map(|v| v.x),
            force_y: f.map(|v| v.y),
            force_z: f.map(|v| v.z),
            torque_x: t.map(|v| v.x),
            torque_y: t.map(|v| v.y),
            torque_z: t.map(|v| v.z),
        });
    }
    Ok(rows)
}

/// Cross-section integrand with the origin moved to `plane_offset * V`.
pub fn section_rows(
    surface: &Surface,
    cycle: &Cycle,
    plane_normal: Vec3,
    plane_offset: f64,
    h: f64,
) -> anyhow::Result<Vec<SectionRow>> {
    let v = plane_normal.normalized().ok_or_else(|| anyhow::anyhow!("zero plane normal"))?;
    let origin = v * plane_offset;
    let mut rows = Vec::with_capacity(TRACE_SAMPLES + 1);
    let mut arclength = 0.0;
    let mut last: Option<(f64, f64)> = None;
    for k in 0..=TRACE_SAMPLES {
        let s = param(cycle, k);
        let (p, d) = cycle.eval(s);
        let frame = frame_at(surface, p[0], p[1])?;
        let speed = frame.norm(d.into());
        if let Some((s0, v0)) = last {
            arclength += 0.5 * (s - s0) * (speed + v0);
        }
        last = Some((s, speed));
        let conormal = frame.push(apply_j(&frame, d.into())) / speed;
        let a = conormal.dot(v);
        let integrand = (a * a + h * (frame.position() - origin).dot(frame.normal)) / a;
        rows.push(SectionRow { cycle: cycle.label.clone(), s, arclength, u: p[0], v: p[1], a, integrand });
    }
    Ok(rows)
}

pub fn write_csv<R: Serialize>(path: &Path, rows: &[R]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
