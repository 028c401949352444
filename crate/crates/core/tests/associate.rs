use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

use num_complex::Complex;

use cmc_core::catalog::{self, punctured_plane_family};
use cmc_core::deformation::{associate_tensor, IsometricFamily, MinimalAssociateFamily, WeierstrassFamily};
use cmc_core::numeric::Tolerances;
use cmc_core::surface::{frame_at, hopf_coefficient};
use cmc_core::Surface;

fn tol() -> Tolerances<f64> {
    Tolerances::default()
}

/// Largest metric change and largest |H| of the members at `ts` on an
/// `n x n` grid.
fn isometry_defect(members: &[Surface], n: usize) -> (f64, f64) {
    let grid = members[0].domain().grid(n, n);
    let (mut drift, mut hmax) = (0.0f64, 0.0f64);
    for &(u, v) in &grid {
        let g0 = frame_at(&members[0], u, v).unwrap().metric;
        for m in members {
            let f = frame_at(m, u, v).unwrap();
            drift = drift.max((f.metric - g0).max_abs());
            hmax = hmax.max(f.mean_curvature.abs());
        }
    }
    (drift, hmax)
}

const TS: [f64; 4] = [0.0, FRAC_PI_6, FRAC_PI_2, PI];

#[test]
fn catenoid_family_is_isometric_and_minimal() {
    let e = catalog::catenoid(1.0_f64).unwrap();
    let fam = MinimalAssociateFamily { x: e.surface, y: e.conjugate.unwrap() };
    let members: Vec<_> = TS.iter().map(|&t| fam.member(t).unwrap()).collect();
    let (drift, h) = isometry_defect(&members, 20);
    assert!(drift < 1e-8 && h < 1e-6, "{drift:e} {h:e}");
}

#[test]
fn two_puncture_annulus_family_is_isometric_and_minimal() {
    let pts = [Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
    let fam = punctured_plane_family(&pts, 1, &tol()).unwrap();
    let src = fam.annulus.weierstrass.unwrap();
    let wf = WeierstrassFamily { data: src.data, setup: src.setup, generators: src.generators, tol: tol() };
    let members: Vec<_> = TS.iter().map(|&t| wf.member(t).unwrap()).collect();
    let (drift, h) = isometry_defect(&members, 20);
    assert!(drift < 1e-8 && h < 1e-6, "{drift:e} {h:e}");
}

#[test]
fn hopf_rotates_along_catenoid_family() {
    let e = catalog::catenoid(1.0_f64).unwrap();
    let fam = MinimalAssociateFamily { x: e.surface.clone(), y: e.conjugate.unwrap() };
    for t in [0.3, 1.2, 2.9] {
        let xt = fam.member(t).unwrap();
        for (u, v) in [(0.2, 0.1), (3.0, -0.6)] {
            let h0 = hopf_coefficient(&e.surface, u, v).unwrap();
            let ht = hopf_coefficient(&xt, u, v).unwrap();
            assert!((ht - Complex::from_polar(1.0, -t) * h0).norm() < 1e-8);
        }
    }
}

#[test]
fn family_shape_operator_is_associate_tensor() {
    // A_t in an orthonormal frame of the common metric equals the rotated
    // traceless part of A.
    let e = catalog::catenoid(1.0_f64).unwrap();
    let fam = MinimalAssociateFamily { x: e.surface.clone(), y: e.conjugate.unwrap() };
    let (u, v) = (0.7, 0.4);
    let a0 = frame_at(&e.surface, u, v).unwrap().shape_orthonormal();
    for t in [0.5, 2.0] {
        let at = frame_at(&fam.member(t).unwrap(), u, v).unwrap().shape_orthonormal();
        assert!((at - associate_tensor(&a0, 0.0, t)).max_abs() < 1e-10, "{at:?}");
    }
}
