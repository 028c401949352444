use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::Instant;

use anyhow::{bail, Context};

use cmc_core::catalog;
use cmc_core::forms::{
    alexandrov_criterion, constant_mean_curvature, cross_section_force, period_report, CONSTANT_H_TOL,
};
use cmc_core::numeric::ComplexPath;
use cmc_core::surface::frame_at;
use cmc_core::verdict::{surface_deformability, weierstrass_deformability, OBSTRUCTION_TOL};
use cmc_core::weierstrass::{associate_minimal, PeriodEngine};
use cmc_core::{GeomError, Surface, Tolerances, Vec3};

use crate::input::{complex_path, load, parse_vec3, Loaded};
use crate::report::{combine, AssociateResult, CrossSectionResult, NamedVerdict, RunReport};
use crate::{mesh, trace, CatalogAction, Command};

pub fn dispatch(command: &Command, tol: &Tolerances, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match command {
        Command::Catalog { action: CatalogAction::List } => catalog_list(tol, stdout),
        Command::Mesh { source, nu, nv, t, check_isometry, out } => {
            let loaded = load(source, tol)?;
            let surface = member(&loaded, *t)?;
            let poles = if t.is_none() { loaded.entry.poles.clone() } else { Vec::new() };
            let m = mesh::build(&surface, *nu, *nv, &poles);
            let mut w = BufWriter::new(File::create(out).with_context(|| format!("creating {}", out.display()))?);
            m.write_obj(&mut w, &format!("{} from {}", surface.name(), loaded.description))?;
            w.flush()?;
            writeln!(
                stdout,
                "{}: {} vertices, {} faces, {} boundary edges{}{}",
                out.display(),
                m.vertices.len(),
                m.faces.len(),
                m.boundary_edges(),
                if m.is_watertight() { ", watertight" } else { "" },
                if m.open_seam { ", open seam" } else { "" }
            )?;
            if *check_isometry {
                let base = mesh::edge_arclengths(&loaded.entry.surface, *nu, *nv, tol)?;
                let moved = mesh::edge_arclengths(&surface, *nu, *nv, tol)?;
                writeln!(
                    stdout,
                    "max relative edge arclength deviation from t = 0: {:.3e} over {} edges",
                    mesh::max_relative_deviation(&base, &moved),
                    base.len()
                )?;
            }
            Ok(())
        }
        Command::Periods { source, cycle, form, origin, trace: trace_path, out } => {
            let started = Instant::now();
            let loaded = load(source, tol)?;
            let (with_force, with_torque) = parse_forms(form)?;
            let origin = match origin {
                Some(o) => Vec3::from(parse_vec3(o)?),
                None => Vec3::zero(),
            };
            let cycles = loaded.select_cycles(cycle)?;
            let mut report = RunReport::new("periods", &loaded.description, &loaded.digest, tol);
            report.mean_curvature = loaded.entry.known_h;
            let mut rows = Vec::new();
            for c in &cycles {
                let p = period_report(&loaded.entry.surface, c, with_force, with_torque, origin, tol)?;
                report.note_error(p.force_error);
                report.note_error(p.torque_error);
                report.periods.push(p);
                if trace_path.is_some() {
                    rows.extend(trace::period_rows(&loaded.entry.surface, c, with_force, with_torque, origin)?);
                }
            }
            if let Some(spec) = &loaded.spec {
                let paths: Vec<(String, ComplexPath<f64>)> =
                    cycles.iter().filter_map(|c| complex_path(c).map(|p| (c.label.clone(), p))).collect();
                let w = weierstrass_deformability(&spec.engine, &paths, tol)?;
                for p in &w.periods {
                    report.note_error(Some(p.period.error_estimate));
                }
                report.weierstrass_periods = w.periods;
                if with_torque && !real_periods_vanish(&spec.engine, &loaded, tol)? {
                    report.notes.push(
                        "the immersion has real periods, so positions (and the torque) depend on path routing".into(),
                    );
                }
            }
            if let Some(path) = trace_path {
                trace::write_csv(path, &rows)?;
            }
            let report = report.finish(started);
            emit(&report, out.out.as_deref(), stdout)
        }
        Command::Deformability { source, out } => {
            let started = Instant::now();
            let loaded = load(source, tol)?;
            let mut report = RunReport::new("deformability", &loaded.description, &loaded.digest, tol);
            let cycles = loaded.select_cycles("all")?;
            let s = surface_deformability(&loaded.entry.surface, &cycles, Vec3::zero(), tol)?;
            report.mean_curvature = Some(s.mean_curvature);
            for p in &s.periods {
                report.note_error(p.force_error);
                report.note_error(p.torque_error);
            }
            report.periods = s.periods;
            report.verdicts.push(NamedVerdict { test: "force-torque".into(), verdict: s.verdict });
            if let Some(generators) = weierstrass_generators(&loaded) {
                let engine = match &loaded.spec {
                    Some(spec) => spec.engine.clone(),
                    None => PeriodEngine::new(&loaded.entry.weierstrass.as_ref().expect("weierstrass source").data)?,
                };
                let w = weierstrass_deformability(&engine, &generators, tol)?;
                for p in &w.periods {
                    report.note_error(Some(p.period.error_estimate));
                }
                report.weierstrass_periods = w.periods;
                report.verdicts.push(NamedVerdict { test: "weierstrass".into(), verdict: w.verdict });
            }
            report.verdict = combine(&report.verdicts);
            report.notes.push(format!(
                "obstructions above {OBSTRUCTION_TOL:e} count; a vanishing obstruction is necessary, not sufficient"
            ));
            let report = report.finish(started);
            emit(&report, out.out.as_deref(), stdout)
        }
        Command::CrossSection { source, cycle, normal, trace: trace_path, out } => {
            let started = Instant::now();
            let loaded = load(source, tol)?;
            let c = loaded.entry.cycle(cycle)?.clone();
            let n = parse_vec3(normal)?;
            let surface = &loaded.entry.surface;
            let h = constant_mean_curvature(surface)?;
            let section = cross_section_force(surface, Vec3::from(n), &c, tol)?;
            let mut report = RunReport::new("cross-section", &loaded.description, &loaded.digest, tol);
            report.mean_curvature = Some(h);
            report.note_error(Some(section.error_estimate));
            let (alexandrov, alexandrov_skipped) = if h.abs() < CONSTANT_H_TOL {
                (None, Some("minimal surface: no disc-radius bound".to_string()))
            } else {
                // The criterion wants the conormal along +V; a cycle running
                // the other way is tried reversed.
                match alexandrov_criterion(surface, Vec3::from(n), &c, tol) {
                    Ok(a) => (Some(a), None),
                    Err(GeomError::Precondition(why)) => {
                        match alexandrov_criterion(surface, Vec3::from(n), &c.reversed(), tol) {
                            Ok(a) => {
                                report.notes.push(format!(
                                    "disc-radius criterion evaluated on the reversed cycle '{}'",
                                    c.label
                                ));
                                (Some(a), None)
                            }
                            Err(GeomError::Precondition(_)) => (None, Some(why)),
                            Err(e) => return Err(e.into()),
                        }
                    }
                    Err(e) => return Err(e.into()),
                }
            };
            if let Some(a) = &alexandrov {
                report.note_error(Some(a.error_estimate));
            }
            if let Some(path) = trace_path {
                let rows = trace::section_rows(surface, &c, Vec3::from(n), section.plane_offset, h)?;
                trace::write_csv(path, &rows)?;
            }
            report.cross_sections.push(CrossSectionResult {
                cycle: c.label.clone(),
                plane_normal: n,
                section,
                alexandrov,
                alexandrov_skipped,
            });
            let report = report.finish(started);
            emit(&report, out.out.as_deref(), stdout)
        }
        Command::Associate { source, t, grid, out } => {
            let started = Instant::now();
            let loaded = load(source, tol)?;
            let moved = member(&loaded, Some(*t))?;
            let base = &loaded.entry.surface;
            let mut result = AssociateResult { t: *t, points: 0, metric_drift: 0.0, max_abs_h: 0.0, gauss_drift: 0.0 };
            for (u, v) in base.domain().grid(*grid, *grid) {
                let (f0, ft) = (frame_at(base, u, v)?, frame_at(&moved, u, v)?);
                let drift = (ft.metric - f0.metric).max_abs() / (1.0 + f0.metric.max_abs());
                result.metric_drift = result.metric_drift.max(drift);
                result.max_abs_h = result.max_abs_h.max(ft.mean_curvature.abs());
                result.gauss_drift = result.gauss_drift.max((ft.gauss_curvature - f0.gauss_curvature).abs());
                result.points += 1;
            }
            let mut report = RunReport::new("associate", &loaded.description, &loaded.digest, tol);
            report.mean_curvature = Some(0.0);
            report.associate = Some(result);
            let report = report.finish(started);
            emit(&report, out.out.as_deref(), stdout)
        }
    }
}

fn catalog_list(tol: &Tolerances, stdout: &mut dyn Write) -> anyhow::Result<()> {
    for e in catalog::list(tol)? {
        let d = e.surface.domain();
        let h = e.known_h.map_or("varies".to_string(), |h| format!("{h}"));
        let per = |p: bool| if p { " periodic" } else { "" };
        let cycles: Vec<&str> = e.cycles.iter().map(|c| c.label.as_str()).collect();
        writeln!(
            stdout,
            "{:<22} H={:<8} u=[{:.4}, {:.4}]{} v=[{:.4}, {:.4}]{} cycles: {}",
            e.name,
            h,
            d.u.0,
            d.u.1,
            per(d.periodic_u),
            d.v.0,
            d.v.1,
            per(d.periodic_v),
            cycles.join(",")
        )?;
    }
    Ok(())
}

/// The input surface, or its associate member at `t`.
fn member(loaded: &Loaded, t: Option<f64>) -> anyhow::Result<Surface> {
    match t {
        None => Ok(loaded.entry.surface.clone()),
        Some(t) => match &loaded.entry.conjugate {
            Some(y) => Ok(associate_minimal(&loaded.entry.surface, y, t)),
            None => bail!(
                "{} has no single-valued conjugate; associate surfaces are built only for minimal surfaces",
                loaded.entry.name
            ),
        },
    }
}

fn parse_forms(text: &str) -> anyhow::Result<(bool, bool)> {
    let (mut force, mut torque) = (false, false);
    for f in text.split(',').map(str::trim) {
        match f {
            "force" => force = true,
            "torque" => torque = true,
            other => bail!("unknown form '{other}' (expected force and/or torque)"),
        }
    }
    Ok((force, torque))
}

/// Labelled homology generators for inputs built from Weierstrass data.
fn weierstrass_generators(loaded: &Loaded) -> Option<Vec<(String, ComplexPath<f64>)>> {
    if loaded.spec.is_some() {
        let cycles =
            loaded.entry.cycles.iter().filter(|c| c.label.starts_with("puncture-") || c.label.starts_with("cycle-"));
        return Some(cycles.filter_map(|c| complex_path(c).map(|p| (c.label.clone(), p))).collect());
    }
    loaded
        .entry
        .weierstrass
        .as_ref()
        .map(|w| w.generators.iter().enumerate().map(|(i, p)| (format!("generator-{i}"), p.clone())).collect())
}

fn real_periods_vanish(engine: &PeriodEngine<f64>, loaded: &Loaded, tol: &Tolerances) -> anyhow::Result<bool> {
    let gens = weierstrass_generators(loaded).unwrap_or_default();
    for (_, p) in &gens {
        if engine.period(p, tol)?.max_abs_re() > OBSTRUCTION_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

fn emit(report: &RunReport, out: Option<&std::path::Path>, stdout: &mut dyn Write) -> anyhow::Result<()> {
    report.emit(out, stdout)?;
    if let Some(path) = out {
        if let Some(v) = &report.verdict {
            writeln!(stdout, "{v}")?;
        }
        writeln!(stdout, "report written to {}", path.display())?;
    }
    Ok(())
}
