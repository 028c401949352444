//! Loading a surface from the catalog or from a Weierstrass input file.

use std::fs;

use anyhow::{bail, Context};
use num_complex::Complex;
use sha2::{Digest, Sha256};

use cmc_core::catalog::{self, DelaunayParams};
use cmc_core::forms::CycleShape;
use cmc_core::numeric::ComplexPath;
use cmc_core::weierstrass::{PeriodEngine, WeierstrassSpec};
use cmc_core::{CatalogEntry, Cycle, Tolerances, WeierstrassData};

use crate::SourceArgs;

/// Weierstrass side of a loaded input.
pub struct SpecInput {
    pub spec: WeierstrassSpec,
    pub data: WeierstrassData,
    pub engine: PeriodEngine<f64>,
}

pub struct Loaded {
    pub entry: CatalogEntry,
    pub spec: Option<SpecInput>,
    /// `catalog:<name>` or the input file path.
    pub description: String,
    /// sha256 of the input file, or of the canonical catalog request.
    pub digest: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

pub fn load(source: &SourceArgs, tol: &Tolerances) -> anyhow::Result<Loaded> {
    if let Some(path) = &source.spec {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let text = std::str::from_utf8(&bytes).context("input file is not UTF-8")?;
        let spec = WeierstrassSpec::from_json(text)?;
        return from_spec(spec, path.display().to_string(), sha256_hex(&bytes), tol);
    }
    let name = source.surface.as_deref().context("either --surface or --spec is required")?;
    let entry = match (name, source.delaunay_h, source.delaunay_a) {
        ("delaunay", Some(h), Some(a)) => catalog::delaunay(DelaunayParams::new(h, a)?, tol.ode_tol)?,
        ("delaunay", _, _) => bail!("--surface delaunay needs --delaunay-h and --delaunay-a"),
        (_, None, None) => catalog::by_name(name, tol)?,
        _ => bail!("--delaunay-h/--delaunay-a only apply to --surface delaunay"),
    };
    let canonical = format!("surface={name};h={:?};a={:?}", source.delaunay_h, source.delaunay_a);
    Ok(Loaded { entry, spec: None, description: format!("catalog:{name}"), digest: sha256_hex(canonical.as_bytes()) })
}

/// Identity-chart entry for Weierstrass data, with the file's circles added as
/// cycles `cycle-0`, `cycle-1`, ...
pub fn from_spec(
    spec: WeierstrassSpec,
    description: String,
    digest: String,
    tol: &Tolerances,
) -> anyhow::Result<Loaded> {
    let data = spec.data()?;
    let engine = PeriodEngine::new(&data)?;
    let min_half =
        spec.cycles.iter().map(|c| c.center[0].abs().max(c.center[1].abs()) + c.radius + 0.5).fold(0.0, f64::max);
    let mut entry = catalog::local_entry("spec", &data, min_half, tol)?;
    for (i, c) in spec.cycles.iter().enumerate() {
        let cycle = Cycle {
            label: format!("cycle-{i}"),
            shape: CycleShape::Circle { center: c.center, radius: c.radius, turns: c.turns },
            unit_speed: false,
        };
        entry.cycles.push(cycle);
    }
    Ok(Loaded { entry, spec: Some(SpecInput { spec, data, engine }), description, digest })
}

impl Loaded {
    /// Cycles named by `selector`: a label, `all`, or `all-punctures`
    /// (circles of radius 0.5 about each removed point).
    pub fn select_cycles(&self, selector: &str) -> anyhow::Result<Vec<Cycle>> {
        match selector {
            "all" => Ok(self.entry.cycles.clone()),
            "all-punctures" => {
                let picked: Vec<Cycle> =
                    self.entry.cycles.iter().filter(|c| c.label.starts_with("puncture-")).cloned().collect();
                if picked.is_empty() {
                    bail!("{} has no puncture cycles", self.entry.name);
                }
                Ok(picked)
            }
            label => Ok(vec![self.entry.cycle(label)?.clone()]),
        }
    }
}

/// The `z`-plane loop of a cycle on an identity chart, if it is a circle.
pub fn complex_path(cycle: &Cycle) -> Option<ComplexPath<f64>> {
    match &cycle.shape {
        CycleShape::Circle { center, radius, turns } => {
            Some(ComplexPath::Circle { center: Complex::new(center[0], center[1]), radius: *radius, turns: *turns })
        }
        _ => None,
    }
}

/// Parses `x,y,z`.
pub fn parse_vec3(text: &str) -> anyhow::Result<[f64; 3]> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("'{text}' is not a comma-separated triple"))?;
    match parts.as_slice() {
        [x, y, z] => Ok([*x, *y, *z]),
        _ => bail!("'{text}' must have exactly three components"),
    }
}
