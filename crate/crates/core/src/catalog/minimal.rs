//! Minimal surfaces given by Weierstrass data on a punctured plane.

use num_complex::Complex;

use crate::error::Result;
use crate::forms::Cycle;
use crate::numeric::{ComplexPath, Tolerances};
use crate::scalar::Real;
use crate::surface::Domain;
use crate::weierstrass::{
    build_immersion, conjugate_immersion, local_immersion, Chart, ChartSetup, FactoredRational, PeriodEngine,
    WeierstrassData,
};

use super::{CatalogEntry, WeierstrassSource};

fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

/// `g = z`, `dh = dz / z` on the square `[-1, 1]^2` punctured at the
/// origin, in the identity chart. Cycles are circles about the puncture of
/// radius 0.3, 0.5 and 0.7.
pub fn catenoid_annulus<T: Real>(tol: &Tolerances<T>) -> Result<CatalogEntry<T>> {
    let zero = c(T::zero(), T::zero());
    let one = c(T::one(), T::zero());
    let data =
        WeierstrassData::new(FactoredRational::linear(zero), FactoredRational::new(one, vec![(zero, -1)]), vec![zero])?;
    let domain =
        Domain::rect((-T::one(), T::one()), (-T::one(), T::one())).with_hole([T::zero(), T::zero()], T::lit(0.1));
    let setup = ChartSetup { chart: Chart::Identity, base: c(T::lit(0.5), T::zero()), domain };
    let generators = vec![ComplexPath::circle(zero, T::lit(0.5))];
    let surface = build_immersion(&data, &setup, &generators, tol)?.renamed("catenoid-annulus");
    let o = [T::zero(), T::zero()];
    Ok(CatalogEntry {
        name: "catenoid-annulus".into(),
        surface,
        known_h: Some(T::zero()),
        k_range: None,
        cycles: vec![
            Cycle::circle("r0.3", o, T::lit(0.3)),
            Cycle::circle("puncture", o, T::lit(0.5)),
            Cycle::circle("r0.7", o, T::lit(0.7)),
        ],
        notes: "catenoid from g = z, dh = dz/z; Im period (0, 0, 2 pi) about the puncture".into(),
        conjugate: None,
        weierstrass: Some(WeierstrassSource { data, setup, generators }),
        poles: Vec::new(),
    })
}

/// `g = prod (z - p_i)^(2k)`, `dh = dz` with punctures at the `p_i`.
pub fn punctured_plane_data<T: Real>(points: &[Complex<T>], k: u32) -> Result<WeierstrassData<T>> {
    let one = c(T::one(), T::zero());
    let factors = points.iter().map(|p| (*p, 2 * k as i32)).collect();
    WeierstrassData::new(FactoredRational::new(one, factors), FactoredRational::constant(one), points.to_vec())
}

/// Entries built from [`punctured_plane_data`].
#[derive(Clone)]
pub struct PuncturedPlaneFamily<T> {
    pub data: WeierstrassData<T>,
    /// Exponential chart of the annulus `R < |z| < 2R` around the origin,
    /// `R = max |p_i| + 1/2`, with the enclosing circle as generator.
    pub annulus: CatalogEntry<T>,
    /// Identity chart of a square around the punctures, with circles of
    /// radius 0.3, 0.5 and 0.7 about each puncture. Built without period
    /// checks: positions are only meaningful when the puncture periods
    /// vanish.
    pub local: CatalogEntry<T>,
}

pub fn punctured_plane_family<T: Real>(
    points: &[Complex<T>],
    k: u32,
    tol: &Tolerances<T>,
) -> Result<PuncturedPlaneFamily<T>> {
    let data = punctured_plane_data(points, k)?;
    let zero = c(T::zero(), T::zero());
    let reach = points.iter().map(|p| p.norm()).fold(T::zero(), T::max);
    let inner = reach + T::lit(0.5);
    let (lo, hi) = (inner.ln(), (inner * T::lit(2.0)).ln());
    let mid = (lo + hi) / T::lit(2.0);

    let annulus_setup = ChartSetup {
        chart: Chart::Exp { center: zero },
        base: c(mid, T::zero()),
        domain: Domain::rect((lo, hi), (T::zero(), T::TAU())).periodic_in_v(),
    };
    let generators = vec![ComplexPath::circle(zero, mid.exp())];
    let surface = build_immersion(&data, &annulus_setup, &generators, tol)?.renamed("punctured-plane");
    let conjugate = conjugate_immersion(&data, &annulus_setup, &generators, tol).ok();
    let annulus = CatalogEntry {
        name: "punctured-plane".into(),
        known_h: Some(T::zero()),
        k_range: None,
        cycles: vec![Cycle::v_loop("enclosing", &annulus_setup.domain, mid)],
        notes: format!(
            "g = prod (z - p)^{} over {} punctures, dh = dz; annulus {} < |z| < {}",
            2 * k,
            points.len(),
            inner,
            inner * T::lit(2.0)
        ),
        conjugate,
        weierstrass: Some(WeierstrassSource { data: data.clone(), setup: annulus_setup, generators }),
        poles: Vec::new(),
        surface,
    };

    let local = local_entry("punctured-plane-local", &data, T::zero(), tol)?;
    Ok(PuncturedPlaneFamily { data, annulus, local })
}

/// Identity-chart entry for arbitrary data: a square around every pole of
/// `Phi` and declared puncture, each removed with clearance 0.1 and
/// circled at radius 0.3, 0.5 and 0.7 (labels `r0.3-i`, `puncture-i`,
/// `r0.7-i`). The square has half-side at least `min_half`. Built without
/// period checks: positions are only meaningful when the periods about the
/// removed points vanish.
pub fn local_entry<T: Real>(
    name: &str,
    data: &WeierstrassData<T>,
    min_half: T,
    tol: &Tolerances<T>,
) -> Result<CatalogEntry<T>> {
    let mut removed = data.punctures.clone();
    for p in PeriodEngine::new(data)?.poles() {
        if removed.iter().all(|q| (*q - *p).norm() > T::lit(1e-12)) {
            removed.push(*p);
        }
    }
    let reach = removed.iter().map(|p| p.re.abs().max(p.im.abs())).fold(T::zero(), T::max);
    let half = (reach + T::one()).max(min_half);
    let mut domain = Domain::rect((-half, half), (-half, half));
    let mut cycles = Vec::new();
    for (i, p) in removed.iter().enumerate() {
        domain = domain.with_hole([p.re, p.im], T::lit(0.1));
        for (label, r) in [("r0.3", 0.3), ("puncture", 0.5), ("r0.7", 0.7)] {
            cycles.push(Cycle::circle(format!("{label}-{i}"), [p.re, p.im], T::lit(r)));
        }
    }
    let setup = ChartSetup { chart: Chart::Identity, base: c(T::zero(), reach + T::lit(0.75)), domain };
    let generators = removed.iter().map(|p| ComplexPath::circle(*p, T::lit(0.5))).collect();
    Ok(CatalogEntry {
        name: name.into(),
        surface: local_immersion(data, &setup, T::zero(), tol)?.renamed(name),
        known_h: Some(T::zero()),
        k_range: None,
        cycles,
        notes: "identity chart; no period check".into(),
        conjugate: Some(local_immersion(data, &setup, T::FRAC_PI_2(), tol)?.renamed(format!("{name}-conjugate"))),
        weierstrass: Some(WeierstrassSource { data: data.clone(), setup, generators }),
        poles: Vec::new(),
    })
}
