use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

use cmc_core::catalog;
use cmc_core::deformation::{
    deformation_state, integrability_residuals, CylinderUnrollingFamily, MinimalAssociateFamily, RigidMotionFamily,
};
use cmc_core::forms::exactness_residuals;
use cmc_core::numeric::Vec3;
use cmc_core::GeomError;

fn catenoid_family() -> MinimalAssociateFamily<f64> {
    let e = catalog::catenoid(1.0_f64).unwrap();
    MinimalAssociateFamily { x: e.surface, y: e.conjugate.unwrap() }
}

fn points() -> Vec<(f64, f64)> {
    vec![(0.3, 0.2), (1.7, -0.5), (4.0, 0.7), (5.5, 0.0)]
}

#[test]
fn minimal_family_has_k_minus_one_and_no_z() {
    let fam = catenoid_family();
    for t in [0.0, FRAC_PI_6, 1.0] {
        let s = deformation_state(&fam, t, 1e-3, 0.4, 0.3).unwrap();
        assert!((s.k + 1.0).abs() < 1e-8, "k = {}", s.k);
        assert!(s.z.a.abs() + s.z.b.abs() < 1e-8);
        assert!(s.v_field.norm() < 1e-8);
        assert!(s.rotation_residual < 1e-8);
    }
}

#[test]
fn minimal_family_satisfies_deformation_equations() {
    let r = integrability_residuals(&catenoid_family(), FRAC_PI_6, 1e-3, 1e-3, &points()).unwrap();
    println!("{r:?}");
    assert!(r.shape_evolution < 1e-6 && r.k_gradient < 1e-6 && r.rotation_derivative < 1e-6, "{r:?}");
    assert!((r.k_min + 1.0).abs() < 1e-8 && (r.k_max + 1.0).abs() < 1e-8);
}

#[test]
fn rigid_motion_satisfies_first_two_equations_only() {
    let base = catalog::cylinder(1.0_f64).unwrap().surface;
    let fam = RigidMotionFamily { base, omega: Vec3::new(0.3, -0.2, 0.5), velocity: Vec3::new(0.1, 0.0, -0.4) };
    let r = integrability_residuals(&fam, 0.2, 1e-3, 1e-3, &points()).unwrap();
    println!("{r:?}");
    assert!(r.shape_evolution < 1e-8 && r.k_gradient < 1e-8, "{r:?}");
    assert!(r.rotation_max < 1e-8);
    // k = <omega, xi> is not the constant -1 of the associate normalization
    assert!(r.rotation_derivative > 1e-3);
    assert!(r.k_max - r.k_min > 0.1);
}

#[test]
fn unrolling_is_isometric_but_not_associate() {
    use cmc_core::deformation::IsometricFamily;
    use cmc_core::surface::frame_at;
    let fam = CylinderUnrollingFamily { radius: 1.0_f64 };
    let r = integrability_residuals(&fam, 0.2, 1e-3, 1e-3, &[(0.1, 0.0), (-0.3, 0.5)]).unwrap();
    assert!(r.metric_drift < 1e-10);
    // the first two equations hold for any isometric deformation
    assert!(r.shape_evolution < 1e-8 && r.k_gradient < 1e-8, "{r:?}");
    assert!(r.rotation_derivative > 0.1);
    let h0 = frame_at(&fam.member(0.0).unwrap(), 0.1, 0.0).unwrap().mean_curvature;
    let h1 = frame_at(&fam.member(0.5).unwrap(), 0.1, 0.0).unwrap().mean_curvature;
    assert!((h0 - 0.5).abs() < 1e-12 && (h1 - 0.25).abs() < 1e-12);
}

#[test]
fn non_isometric_family_is_refused() {
    struct Scaled;
    impl cmc_core::deformation::IsometricFamily<f64> for Scaled {
        fn name(&self) -> String {
            "scaled".into()
        }
        fn member(&self, t: f64) -> cmc_core::Result<cmc_core::Surface> {
            let e = catalog::catenoid(1.0 + t).unwrap();
            Ok(e.surface)
        }
    }
    let err = integrability_residuals(&Scaled, 0.0, 1e-3, 1e-3, &points()).unwrap_err();
    assert!(matches!(err, GeomError::NonIsometricFamily { .. }));
}

#[test]
fn velocity_normal_and_torque_identities_on_catenoid_family() {
    let fam = catenoid_family();
    for t in [0.0, FRAC_PI_2, PI] {
        let r = exactness_residuals(&fam, t, 1e-4, &points()).unwrap();
        println!("{t}: {r:?}");
        assert!(r.velocity < 1e-5 && r.normal < 1e-5 && r.torque < 1e-5, "{r:?}");
    }
}
