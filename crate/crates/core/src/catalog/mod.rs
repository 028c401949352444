//! Reference surfaces with known ground truth.

mod classical;
mod delaunay;
mod minimal;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::forms::Cycle;
use crate::numeric::{ComplexPath, Tolerances, Vec3};
use crate::scalar::Real;
use crate::surface::{brioschi_curvature, frame_at, ParametricSurface};
use crate::weierstrass::{ChartSetup, WeierstrassData};

pub use classical::{catenoid, cylinder, enneper, helicoid, paraboloid, sphere};
pub use delaunay::{delaunay, delaunay_profile, DelaunayBranch, DelaunayParams, DelaunayProfile, ProfileSummary};
pub use minimal::{catenoid_annulus, local_entry, punctured_plane_data, punctured_plane_family, PuncturedPlaneFamily};

/// Weierstrass data an entry was built from.
#[derive(Debug, Clone)]
pub struct WeierstrassSource<T> {
    pub data: WeierstrassData<T>,
    pub setup: ChartSetup<T>,
    /// Homology generators of the chart's domain.
    pub generators: Vec<ComplexPath<T>>,
}

/// A named surface with its known invariants and distinguished cycles.
#[derive(Clone)]
pub struct CatalogEntry<T> {
    pub name: String,
    pub surface: ParametricSurface<T>,
    pub known_h: Option<T>,
    /// `(min K, max K)` over the domain.
    pub k_range: Option<(T, T)>,
    pub cycles: Vec<Cycle<T>>,
    pub notes: String,
    /// Conjugate minimal surface on the same domain, when single valued.
    pub conjugate: Option<ParametricSurface<T>>,
    pub weierstrass: Option<WeierstrassSource<T>>,
    /// Points closing the `v = v_min` and `v = v_max` ends of the domain,
    /// for surfaces whose chart omits them.
    pub poles: Vec<Vec3<T>>,
}

impl<T: Real> std::fmt::Debug for CatalogEntry<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("name", &self.name)
            .field("surface", &self.surface)
            .field("known_h", &self.known_h)
            .field("cycles", &self.cycles.iter().map(|c| c.label.as_str()).collect::<Vec<_>>())
            .finish_non_exhaustive()
    }
}

/// Worst deviations found by [`CatalogEntry::check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntryCheck {
    pub points: usize,
    /// `max |H - known H|`.
    pub h_deviation: f64,
    /// `max |K - K_Brioschi|`: the Gauss equation.
    pub gauss_deviation: f64,
    /// Largest excursion of `K` outside `k_range`.
    pub k_range_excess: f64,
    /// `max (|<xi, x_u>| + |<xi, x_v>|)`.
    pub normal_defect: f64,
}

impl<T: Real> CatalogEntry<T> {
    pub fn cycle(&self, label: &str) -> Result<&Cycle<T>> {
        self.cycles.iter().find(|c| c.label == label).ok_or_else(|| {
            let known: Vec<&str> = self.cycles.iter().map(|c| c.label.as_str()).collect();
            GeomError::InvalidParameters(format!("{} has no cycle '{label}' (known: {})", self.name, known.join(", ")))
        })
    }

    /// Frame validity, declared mean curvature, Gauss equation and the
    /// curvature range on an `n x n` grid.
    pub fn check(&self, n: usize) -> Result<EntryCheck> {
        let mut out =
            EntryCheck { points: 0, h_deviation: 0.0, gauss_deviation: 0.0, k_range_excess: 0.0, normal_defect: 0.0 };
        for (u, v) in self.surface.domain().grid(n, n) {
            let f = frame_at(&self.surface, u, v)?;
            let nd = f.normal.dot(f.jet.xu).abs() + f.normal.dot(f.jet.xv).abs();
            out.normal_defect = out.normal_defect.max(nd.to_f64_lossy());
            if let Some(h) = self.known_h {
                out.h_deviation = out.h_deviation.max((f.mean_curvature - h).abs().to_f64_lossy());
            }
            let kb = brioschi_curvature(&self.surface, u, v)?;
            let scale = T::one() + f.gauss_curvature.abs();
            out.gauss_deviation = out.gauss_deviation.max(((f.gauss_curvature - kb).abs() / scale).to_f64_lossy());
            if let Some((lo, hi)) = self.k_range {
                let k = f.gauss_curvature;
                let ex = (lo - k).max(k - hi).max(T::zero());
                out.k_range_excess = out.k_range_excess.max(ex.to_f64_lossy());
            }
            out.points += 1;
        }
        Ok(out)
    }
}

/// Parameters of the named Delaunay entries.
pub fn unduloid_params<T: Real>() -> DelaunayParams<T> {
    DelaunayParams::new(T::lit(0.5), T::lit(0.3)).expect("valid unduloid parameters")
}

pub fn nodoid_params<T: Real>() -> DelaunayParams<T> {
    DelaunayParams::new(T::lit(0.5), T::lit(-0.3)).expect("valid nodoid parameters")
}

/// Names accepted by [`by_name`], in listing order.
pub const NAMES: [&str; 11] = [
    "catenoid",
    "helicoid",
    "enneper",
    "sphere",
    "cylinder",
    "paraboloid",
    "unduloid",
    "nodoid",
    "catenoid-annulus",
    "punctured-plane",
    "punctured-plane-local",
];

/// Entry by name with unit size parameters; `punctured-plane*` use the
/// punctures `+-1` and `k = 1`.
pub fn by_name<T: Real>(name: &str, tol: &Tolerances<T>) -> Result<CatalogEntry<T>> {
    let one = T::one();
    match name {
        "catenoid" => catenoid(one),
        "helicoid" => helicoid(one),
        "enneper" => enneper(),
        "sphere" => sphere(one),
        "cylinder" => cylinder(one),
        "paraboloid" => paraboloid(),
        "unduloid" => delaunay(unduloid_params(), tol.ode_tol),
        "nodoid" => delaunay(nodoid_params(), tol.ode_tol),
        "catenoid-annulus" => catenoid_annulus(tol),
        "punctured-plane" | "punctured-plane-local" => {
            let pts = [Complex::new(one, T::zero()), Complex::new(-one, T::zero())];
            let fam = punctured_plane_family(&pts, 1, tol)?;
            Ok(if name == "punctured-plane" { fam.annulus } else { fam.local })
        }
        _ => Err(GeomError::InvalidParameters(format!("unknown surface '{name}' (known: {})", NAMES.join(", ")))),
    }
}

/// Every named entry.
pub fn list<T: Real>(tol: &Tolerances<T>) -> Result<Vec<CatalogEntry<T>>> {
    NAMES.iter().map(|n| by_name(n, tol)).collect()
}
