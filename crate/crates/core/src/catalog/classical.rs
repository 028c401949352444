//! Surfaces with closed-form jets.

use num_complex::Complex;

use crate::error::{GeomError, Result};
use crate::forms::Cycle;
use crate::numeric::{Jet, Vec3};
use crate::scalar::Real;
use crate::surface::{Domain, ParametricSurface};

use super::CatalogEntry;

fn positive<T: Real>(what: &str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(GeomError::InvalidParameters(format!("{what} must be positive, got {x}")))
    }
}

fn annulus_domain<T: Real>() -> Domain<T> {
    Domain::rect((T::zero(), T::TAU()), (-T::one(), T::one())).periodic_in_u()
}

fn catenoid_surface<T: Real>(c: T) -> ParametricSurface<T> {
    ParametricSurface::new(format!("catenoid({c})"), annulus_domain(), Some(T::zero()), move |u: T, v: T| {
        let (s, co) = u.sin_cos();
        let (ch, sh) = (v.cosh(), v.sinh());
        Ok(Jet {
            x: Vec3::new(ch * co, ch * s, v) * c,
            xu: Vec3::new(-ch * s, ch * co, T::zero()) * c,
            xv: Vec3::new(sh * co, sh * s, T::one()) * c,
            xuu: Vec3::new(-ch * co, -ch * s, T::zero()) * c,
            xuv: Vec3::new(-sh * s, sh * co, T::zero()) * c,
            xvv: Vec3::new(ch * co, ch * s, T::zero()) * c,
        })
    })
}

fn helicoid_surface<T: Real>(c: T) -> ParametricSurface<T> {
    let domain = Domain::rect((T::zero(), T::TAU()), (-T::one(), T::one()));
    ParametricSurface::new(format!("helicoid({c})"), domain, Some(T::zero()), move |u: T, v: T| {
        let (s, co) = u.sin_cos();
        let (ch, sh) = (v.cosh(), v.sinh());
        Ok(Jet {
            x: Vec3::new(-sh * s, sh * co, -u) * c,
            xu: Vec3::new(-sh * co, -sh * s, -T::one()) * c,
            xv: Vec3::new(-ch * s, ch * co, T::zero()) * c,
            xuu: Vec3::new(sh * s, -sh * co, T::zero()) * c,
            xuv: Vec3::new(-ch * co, -ch * s, T::zero()) * c,
            xvv: Vec3::new(-sh * s, sh * co, T::zero()) * c,
        })
    })
}

/// `c (cosh v cos u, cosh v sin u, v)` on `[0, 2 pi) x [-1, 1]`, with its
/// conjugate helicoid.
pub fn catenoid<T: Real>(c: T) -> Result<CatalogEntry<T>> {
    positive("neck radius", c)?;
    let surface = catenoid_surface(c);
    let domain = surface.domain().clone();
    let kmin = -T::one() / (c * c);
    let kmax = -T::one() / (c * c * T::one().cosh().powi(4));
    Ok(CatalogEntry {
        name: "catenoid".into(),
        known_h: Some(T::zero()),
        k_range: Some((kmin, kmax)),
        cycles: vec![Cycle::u_loop("waist", &domain, T::zero()), Cycle::u_loop("upper", &domain, T::lit(0.5))],
        notes: "minimal; waist force (0, 0, 2 pi c) up to orientation; no associate family on the annulus".into(),
        conjugate: Some(helicoid_surface(c).with_domain(domain)),
        weierstrass: None,
        poles: Vec::new(),
        surface,
    })
}

/// The conjugate of [`catenoid`]: `c (-sinh v sin u, sinh v cos u, -u)`.
pub fn helicoid<T: Real>(c: T) -> Result<CatalogEntry<T>> {
    positive("pitch", c)?;
    let surface = helicoid_surface(c);
    let kmin = -T::one() / (c * c);
    let kmax = -T::one() / (c * c * T::one().cosh().powi(4));
    let minus = ParametricSurface::linear_combination(
        "-catenoid",
        -T::one(),
        &catenoid_surface(c),
        T::zero(),
        &catenoid_surface(c),
    )
    .with_domain(surface.domain().clone());
    Ok(CatalogEntry {
        name: "helicoid".into(),
        known_h: Some(T::zero()),
        k_range: Some((kmin, kmax)),
        cycles: Vec::new(),
        notes: "minimal; simply connected chart of the helicoid".into(),
        conjugate: Some(minus),
        weierstrass: None,
        poles: Vec::new(),
        surface,
    })
}

fn enneper_with<T: Real>(name: &str, c: Complex<T>) -> ParametricSurface<T> {
    let domain = Domain::rect((-T::one(), T::one()), (-T::one(), T::one()));
    let half = T::lit(0.5);
    let i = Complex::new(T::zero(), T::one());
    ParametricSurface::new(name.to_string(), domain, Some(T::zero()), move |u: T, v: T| {
        let z = Complex::new(u, v);
        let z2 = z * z;
        let z3 = z2 * z;
        let one = Complex::new(T::one(), T::zero());
        let sixth = T::one() / T::lit(6.0);
        let f = [z * half - z3 * sixth, i * (z * half + z3 * sixth), z2 * half];
        let fw = [(one - z2) * half, i * (one + z2) * half, z];
        let fww = [-z, i * z, one];
        let re = |k: Complex<T>, w: &[Complex<T>; 3]| Vec3::new((k * w[0]).re, (k * w[1]).re, (k * w[2]).re);
        let ic = i * c;
        let xuu = re(c, &fww);
        Ok(Jet { x: re(c, &f), xu: re(c, &fw), xv: re(ic, &fw), xuu, xuv: re(ic, &fww), xvv: -xuu })
    })
}

/// Enneper's surface from `g = z`, `dh = z dz` on `[-1, 1]^2`.
pub fn enneper<T: Real>() -> Result<CatalogEntry<T>> {
    let one = Complex::new(T::one(), T::zero());
    let conj = Complex::new(T::zero(), -T::one());
    let kmin = -T::lit(16.0) / T::lit(81.0);
    Ok(CatalogEntry {
        name: "enneper".into(),
        surface: enneper_with("enneper", one),
        known_h: Some(T::zero()),
        // K = -16 / (1 + |z|^2)^4 ranges over |z|^2 in [0, 2]
        k_range: Some((-T::lit(16.0), kmin)),
        cycles: Vec::new(),
        notes: "minimal, umbilic free, |hopf| = 1/2".into(),
        conjugate: Some(enneper_with("enneper-conjugate", conj)),
        weierstrass: None,
        poles: Vec::new(),
    })
}

/// Round sphere of radius `r` in Mercator coordinates
/// `r (sech v cos u, sech v sin u, tanh v)`, outward normal, `H = -1/r`.
pub fn sphere<T: Real>(r: T) -> Result<CatalogEntry<T>> {
    positive("radius", r)?;
    let domain = Domain::rect((T::zero(), T::TAU()), (-T::lit(2.5), T::lit(2.5))).periodic_in_u();
    let surface =
        ParametricSurface::new(format!("sphere({r})"), domain.clone(), Some(-T::one() / r), move |u: T, v: T| {
            let (sn, co) = u.sin_cos();
            let s = T::one() / v.cosh();
            let t = v.tanh();
            let a = s * t * t - s * s * s;
            Ok(Jet {
                x: Vec3::new(s * co, s * sn, t) * r,
                xu: Vec3::new(-s * sn, s * co, T::zero()) * r,
                xv: Vec3::new(-s * t * co, -s * t * sn, s * s) * r,
                xuu: Vec3::new(-s * co, -s * sn, T::zero()) * r,
                xuv: Vec3::new(s * t * sn, -s * t * co, T::zero()) * r,
                xvv: Vec3::new(a * co, a * sn, -T::lit(2.0) * s * s * t) * r,
            })
        });
    let k = T::one() / (r * r);
    Ok(CatalogEntry {
        name: "sphere".into(),
        surface,
        known_h: Some(-T::one() / r),
        k_range: Some((k, k)),
        cycles: vec![Cycle::u_loop("equator", &domain, T::zero())],
        notes: "every cycle is null-homologous: force and torque vanish".into(),
        conjugate: None,
        weierstrass: None,
        poles: vec![Vec3::new(T::zero(), T::zero(), -r), Vec3::new(T::zero(), T::zero(), r)],
    })
}

/// `(r cos u, -r sin u, r v)` with the inward normal, so `H = 1/(2r)`.
pub fn cylinder<T: Real>(r: T) -> Result<CatalogEntry<T>> {
    positive("radius", r)?;
    let domain = Domain::rect((T::zero(), T::TAU()), (-T::one(), T::one())).periodic_in_u();
    let h = T::one() / (T::lit(2.0) * r);
    let surface = ParametricSurface::new(format!("cylinder({r})"), domain.clone(), Some(h), move |u: T, v: T| {
        let (s, c) = u.sin_cos();
        Ok(Jet {
            x: Vec3::new(r * c, -r * s, r * v),
            xu: Vec3::new(-r * s, -r * c, T::zero()),
            xv: Vec3::new(T::zero(), T::zero(), r),
            xuu: Vec3::new(-r * c, r * s, T::zero()),
            xuv: Vec3::zero(),
            xvv: Vec3::zero(),
        })
    });
    Ok(CatalogEntry {
        name: "cylinder".into(),
        surface,
        known_h: Some(h),
        k_range: Some((T::zero(), T::zero())),
        cycles: vec![Cycle::u_loop("equator", &domain, T::zero()).with_unit_speed(r == T::one())],
        notes: "equator force (0, 0, pi r) for u increasing, torque about the axis 0".into(),
        conjugate: None,
        weierstrass: None,
        poles: Vec::new(),
    })
}

/// Conformal radius coordinate of the paraboloid `z = r^2`:
/// `s(r) = q - atanh(1/q)`, `q = sqrt(1 + 4 r^2)`.
fn paraboloid_s<T: Real>(r: T) -> T {
    let q = (T::one() + T::lit(4.0) * r * r).sqrt();
    q - (T::one() / q).atanh()
}

fn paraboloid_r<T: Real>(s: T) -> T {
    // ds/dr = q / r; Newton from a bracket-safe start
    let mut r = T::lit(0.5);
    for _ in 0..100 {
        let q = (T::one() + T::lit(4.0) * r * r).sqrt();
        let step = (paraboloid_s(r) - s) * r / q;
        let next = (r - step).max(r * T::lit(0.1));
        if (next - r).abs() <= T::eps() * T::lit(4.0) * r {
            return next;
        }
        r = next;
    }
    r
}

/// The paraboloid `z = r^2` over `0.2 <= r <= 1` in isothermal coordinates
/// `(theta, s)`. Not CMC: a control for checks that must refuse it.
pub fn paraboloid<T: Real>() -> Result<CatalogEntry<T>> {
    let domain =
        Domain::rect((T::zero(), T::TAU()), (paraboloid_s(T::lit(0.2)), paraboloid_s(T::one()))).periodic_in_u();
    let surface = ParametricSurface::new("paraboloid", domain.clone(), None, move |u: T, v: T| {
        let r = paraboloid_r(v);
        let q = (T::one() + T::lit(4.0) * r * r).sqrt();
        let r1 = r / q;
        let r2 = r / (q * q * q * q);
        let z1 = T::lit(2.0) * r * r1;
        let z2 = T::lit(2.0) * (r1 * r1 + r * r2);
        let (sn, c) = u.sin_cos();
        Ok(Jet {
            x: Vec3::new(r * c, r * sn, r * r),
            xu: Vec3::new(-r * sn, r * c, T::zero()),
            xv: Vec3::new(r1 * c, r1 * sn, z1),
            xuu: Vec3::new(-r * c, -r * sn, T::zero()),
            xuv: Vec3::new(-r1 * sn, r1 * c, T::zero()),
            xvv: Vec3::new(r2 * c, r2 * sn, z2),
        })
    });
    Ok(CatalogEntry {
        name: "paraboloid".into(),
        surface,
        known_h: None,
        k_range: Some((T::lit(4.0) / T::lit(25.0), T::lit(4.0) / T::lit(1.16 * 1.16))),
        cycles: vec![Cycle::u_loop("parallel", &domain, paraboloid_s(T::lit(0.5)))],
        notes: "non-constant mean curvature; the force form is undefined".into(),
        conjugate: None,
        weierstrass: None,
        poles: Vec::new(),
    })
}
