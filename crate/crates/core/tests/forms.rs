use std::f64::consts::{PI, TAU};

use num_complex::Complex;

use cmc_core::catalog::{self, punctured_plane_family};
use cmc_core::forms::{
    alexandrov_criterion, closedness_defect, conormal_form, cross_section_force, fit_decay_order, force_form,
    torque_form, Cycle,
};
use cmc_core::numeric::{Tolerances, Vec3};
use cmc_core::GeomError;

fn tol() -> Tolerances<f64> {
    Tolerances::default()
}

fn decay(form: &cmc_core::OneForm, p: [f64; 2]) -> (f64, f64) {
    let hs = [1e-1, 5e-2, 2.5e-2];
    let d: Vec<f64> = hs.iter().map(|&h| closedness_defect(form, p, h).unwrap().norm()).collect();
    fit_decay_order(&hs, &d)
}

#[test]
fn force_and_torque_are_closed_on_unduloid() {
    let e = catalog::by_name::<f64>("unduloid", &tol()).unwrap();
    let p = [0.4, 1.0];
    let (ow, _) = decay(&force_form(&e.surface).unwrap(), p);
    let (os, _) = decay(&torque_form(&e.surface, Vec3::zero()).unwrap(), p);
    let (oc, cc) = decay(&conormal_form(&e.surface), p);
    assert!(ow >= 2.7 && os >= 2.7, "orders {ow} {os}");
    assert!(oc <= 2.3 && cc > 1e-3, "control order {oc}, constant {cc}");
}

#[test]
fn periods_are_homology_invariant_on_catenoid_annulus() {
    let e = catalog::catenoid_annulus(&tol()).unwrap();
    let w = force_form(&e.surface).unwrap();
    let s = torque_form(&e.surface, Vec3::zero()).unwrap();
    let (a, b) = (e.cycle("r0.3").unwrap(), e.cycle("r0.7").unwrap());
    let (wa, wb) = (w.period(a, &tol()).unwrap().value, w.period(b, &tol()).unwrap().value);
    let (sa, sb) = (s.period(a, &tol()).unwrap().value, s.period(b, &tol()).unwrap().value);
    assert!((wa - wb).norm() < 1e-8 && (sa - sb).norm() < 1e-8);
    assert!((wa.norm() - TAU).abs() < 1e-8, "{wa:?}");
}

#[test]
fn periods_are_homology_invariant_on_single_puncture_family() {
    let fam = punctured_plane_family(&[Complex::new(0.0, 0.0)], 1, &tol()).unwrap();
    let e = fam.local;
    let w = force_form(&e.surface).unwrap();
    let s = torque_form(&e.surface, Vec3::zero()).unwrap();
    let (a, b) = (e.cycle("r0.3-0").unwrap(), e.cycle("r0.7-0").unwrap());
    let wa = w.period(a, &tol()).unwrap().value;
    let sa = s.period(a, &tol()).unwrap().value;
    assert!((wa - w.period(b, &tol()).unwrap().value).norm() < 1e-8);
    assert!((sa - s.period(b, &tol()).unwrap().value).norm() < 1e-8);
    assert!(wa.norm() < 1e-8);
    // For H = 0, sigma = -x x dy and int x x dy = Im int F x dF / 2. The
    // y-component of F x Phi has residue 1 at the puncture, so the torque
    // is (0, -pi, 0): minimal surfaces need not have vanishing torque.
    assert!((sa - Vec3::new(0.0, -PI, 0.0)).norm() < 1e-8, "{sa:?}");
}

#[test]
fn catenoid_waist_by_direct_and_cross_section() {
    let e = catalog::catenoid(1.0_f64).unwrap();
    let waist = e.cycle("waist").unwrap();
    let w = force_form(&e.surface).unwrap().period(waist, &tol()).unwrap().value;
    assert!((w.norm() - TAU).abs() < 1e-8);
    let cs = cross_section_force(&e.surface, Vec3::e3(), waist, &tol()).unwrap();
    assert!((cs.value.abs() - TAU).abs() < 1e-8);
    assert!((cs.value - w.z).abs() < 1e-8);
}

#[test]
fn cross_section_matches_direct_on_unduloid_neck_and_bulge() {
    let e = catalog::by_name::<f64>("unduloid", &tol()).unwrap();
    let f = force_form(&e.surface).unwrap();
    for label in ["neck", "bulge"] {
        let c = e.cycle(label).unwrap();
        let w = f.period(c, &tol()).unwrap().value;
        let cs = cross_section_force(&e.surface, Vec3::e3(), c, &tol()).unwrap();
        assert!((cs.value - w.z).abs() < 1e-8, "{label}: {} vs {}", cs.value, w.z);
    }
}

#[test]
fn tangent_cross_section_is_refused() {
    let e = catalog::cylinder(1.0_f64).unwrap();
    let eq = e.cycle("equator").unwrap();
    let err = cross_section_force(&e.surface, Vec3::e1(), eq, &tol()).unwrap_err();
    assert!(matches!(err, GeomError::TransversalityFailure { .. } | GeomError::Precondition(_)), "{err:?}");
}

#[test]
fn cylinder_alexandrov_value_and_disc_check() {
    let e = catalog::cylinder(1.0_f64).unwrap();
    let r = alexandrov_criterion(&e.surface, Vec3::e3(), e.cycle("equator").unwrap(), &tol()).unwrap();
    assert!((r.value - PI).abs() < 1e-8, "{r:?}");
    assert!((r.enclosing_radius - 1.0).abs() < 1e-6);
    assert!((r.radius_bound - 2.0).abs() < 1e-12);
    assert!(r.finite_family);
}

#[test]
fn sphere_equator_periods_vanish() {
    let e = catalog::sphere(1.0_f64).unwrap();
    let c = e.cycle("equator").unwrap();
    let w = force_form(&e.surface).unwrap().period(c, &tol()).unwrap().value;
    let t = torque_form(&e.surface, Vec3::new(0.2, -0.1, 0.3)).unwrap().period(c, &tol()).unwrap().value;
    assert!(w.norm() < 1e-10 && t.norm() < 1e-10, "{w:?} {t:?}");
}

#[test]
fn cylinder_torque_about_shifted_origin() {
    // T(o) = T(0) - o x W
    let e = catalog::cylinder(1.0_f64).unwrap();
    let c = e.cycle("equator").unwrap();
    let w = force_form(&e.surface).unwrap().period(c, &tol()).unwrap().value;
    let o = Vec3::new(0.3, -0.2, 0.5);
    let t = torque_form(&e.surface, o).unwrap().period(c, &tol()).unwrap().value;
    let t0 = torque_form(&e.surface, Vec3::zero()).unwrap().period(c, &tol()).unwrap().value;
    assert!((t - (t0 - o.cross(w))).norm() < 1e-9, "{t:?}");
}

#[test]
fn reversed_cycle_flips_sign() {
    let e = catalog::catenoid(1.0_f64).unwrap();
    let c = e.cycle("waist").unwrap();
    let f = force_form(&e.surface).unwrap();
    let a = f.period(c, &tol()).unwrap().value;
    let b = f.period(&c.reversed(), &tol()).unwrap().value;
    assert!((a + b).norm() < 1e-10);
    let sq = Cycle::square("sq", [1.0, 0.2], 0.3);
    assert!(f.period(&sq, &tol()).unwrap().value.norm() < 1e-9);
}
