//! Surfaces `Re(c int Phi)` on a chart of the punctured plane, and the
//! associate family built from them.

use num_complex::Complex;

use crate::error::{GeomError, Result};
use crate::numeric::{integrate_path_with, Complex3, ComplexPath, Jet, Tolerances, Vec3};
use crate::scalar::Real;
use crate::surface::{Domain, ParametricSurface};

use super::data::WeierstrassData;
use super::period::{deformable, well_defined, PeriodEngine, PERIOD_ZERO_TOL};

/// Parametrization of (part of) the `z`-plane by `w = u + i v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Chart<T> {
    /// `z = w`.
    Identity,
    /// `z = center + e^w`: `v` is the angle about `center`, `u` the log
    /// radius. Conformal, so isothermal coordinates are preserved.
    Exp { center: Complex<T> },
}

impl<T: Real> Chart<T> {
    /// `(z, dz/dw, d^2z/dw^2)`.
    pub fn map(&self, w: Complex<T>) -> (Complex<T>, Complex<T>, Complex<T>) {
        match *self {
            Chart::Identity => (w, Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero())),
            Chart::Exp { center } => {
                let e = w.exp();
                (center + e, e, e)
            }
        }
    }

    /// Preimages of `p` whose imaginary part lies within one period of
    /// `v_range`.
    pub fn preimages(&self, p: Complex<T>, v_range: (T, T)) -> Vec<Complex<T>> {
        match *self {
            Chart::Identity => vec![p],
            Chart::Exp { center } => {
                let d = p - center;
                if d.norm() == T::zero() {
                    return Vec::new();
                }
                let base = d.ln();
                let tau = T::TAU();
                let lo = ((v_range.0 - base.im) / tau).floor() - T::one();
                let hi = ((v_range.1 - base.im) / tau).ceil() + T::one();
                let mut out = Vec::new();
                let mut k = lo;
                while k <= hi {
                    out.push(Complex::new(base.re, base.im + tau * k));
                    k = k + T::one();
                }
                out
            }
        }
    }
}

/// Chart, basepoint (in `w`) and parameter domain of a Weierstrass surface.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartSetup<T> {
    pub chart: Chart<T>,
    pub base: Complex<T>,
    pub domain: Domain<T>,
}

/// `F(w) = int_{w0}^{w} Phi(z(w)) z'(w) dw` along routed paths.
#[derive(Debug, Clone)]
struct Primitive<T> {
    engine: PeriodEngine<T>,
    chart: Chart<T>,
    base: Complex<T>,
    obstacles: Vec<Complex<T>>,
    clearance: T,
    tol: Tolerances<T>,
}

impl<T: Real> Primitive<T> {
    fn new(engine: PeriodEngine<T>, setup: &ChartSetup<T>, tol: Tolerances<T>) -> Self {
        let v_range = setup.domain.v;
        let obstacles: Vec<Complex<T>> =
            engine.poles().iter().flat_map(|p| setup.chart.preimages(*p, v_range)).collect();
        let clearance = setup.domain.holes.iter().map(|(_, r)| *r * T::lit(0.5)).fold(T::lit(0.1), T::min);
        Self { engine, chart: setup.chart, base: setup.base, obstacles, clearance, tol }
    }

    /// Polyline from `a` to `b` that keeps `clearance` away from every
    /// obstacle, except obstacles next to the endpoints themselves.
    fn route(&self, a: Complex<T>, b: Complex<T>, depth: u32, out: &mut Vec<Complex<T>>) {
        let seg = ComplexPath::segment(a, b);
        let blocking = self
            .obstacles
            .iter()
            .filter(|p| {
                seg.distance_to(**p) < self.clearance
                    && (**p - a).norm() > self.clearance
                    && (**p - b).norm() > self.clearance
            })
            .min_by(|p, q| (**p - a).norm().partial_cmp(&(**q - a).norm()).unwrap_or(std::cmp::Ordering::Equal));
        match blocking {
            Some(p) if depth < 8 => {
                let d = b - a;
                let normal = Complex::new(-d.im, d.re) / d.norm();
                let s = ((*p - a) * d.conj()).re / d.norm_sqr();
                let via = a + d * s + normal * (self.clearance * T::lit(2.0));
                self.route(a, via, depth + 1, out);
                self.route(via, b, depth + 1, out);
            }
            _ => out.push(b),
        }
    }

    fn value(&self, w: Complex<T>) -> Result<[Complex<T>; 3]> {
        let mut points = vec![self.base];
        self.route(self.base, w, 0, &mut points);
        if points.len() < 2 || (w - self.base).norm() == T::zero() {
            return Ok([Complex::new(T::zero(), T::zero()); 3]);
        }
        let path = ComplexPath::Polyline { points, closed: false };
        let (v, _) = integrate_path_with(
            |w| {
                let (z, dz, _) = self.chart.map(w);
                Ok(Complex3(self.engine.phi().eval(z)) * dz)
            },
            &path,
            &self.tol,
        )?;
        Ok(v.0)
    }

    /// `(F, F_w, F_ww)` at `w`.
    fn jet(&self, w: Complex<T>) -> Result<[[Complex<T>; 3]; 3]> {
        let f = self.value(w)?;
        let (z, dz, d2z) = self.chart.map(w);
        let (phi, dphi) = self.engine.phi().eval_with_derivative(z);
        let fw = phi.map(|p| p * dz);
        let fww = [0, 1, 2].map(|k| dphi[k] * dz * dz + phi[k] * d2z);
        Ok([f, fw, fww])
    }
}

fn re3<T: Real>(c: Complex<T>, v: &[Complex<T>; 3]) -> Vec3<T> {
    Vec3::new((c * v[0]).re, (c * v[1]).re, (c * v[2]).re)
}

/// `Re(c F)` with its analytic jet: `x_u = Re(c F_w)`, `x_v = Re(i c F_w)`,
/// `x_uu = -x_vv = Re(c F_ww)`, `x_uv = Re(i c F_ww)`.
fn surface_with_coefficient<T: Real>(
    name: String,
    primitive: Primitive<T>,
    domain: Domain<T>,
    c: Complex<T>,
) -> ParametricSurface<T> {
    let ic = c * Complex::new(T::zero(), T::one());
    ParametricSurface::new(name, domain, Some(T::zero()), move |u: T, v: T| -> Result<Jet<T>> {
        let [f, fw, fww] = primitive.jet(Complex::new(u, v))?;
        let xuu = re3(c, &fww);
        Ok(Jet { x: re3(c, &f), xu: re3(c, &fw), xv: re3(ic, &fw), xuu, xuv: re3(ic, &fww), xvv: -xuu })
    })
}

fn require(verdict_holds: bool, what: &str, max: f64) -> Result<()> {
    if verdict_holds {
        Ok(())
    } else {
        Err(GeomError::Precondition(format!("{what} period of size {max:e} on a generator")))
    }
}

/// `Re(e^{-it} F)`: the associate surface at angle `t`. `t = 0` gives
/// `x = Re F`, `t = pi/2` the conjugate `y = Im F`.
///
/// Requires vanishing real periods when `cos t != 0` and vanishing
/// imaginary periods when `sin t != 0`, checked on `generators`.
pub fn associate_immersion<T: Real>(
    data: &WeierstrassData<T>,
    setup: &ChartSetup<T>,
    generators: &[ComplexPath<T>],
    t: T,
    tol: &Tolerances<T>,
) -> Result<ParametricSurface<T>> {
    let engine = PeriodEngine::new(data)?;
    let small = T::lit(1e-14);
    if t.cos().abs() > small {
        let v = well_defined(&engine, generators, tol, PERIOD_ZERO_TOL)?;
        require(v.holds, "nonzero real", v.max_abs)?;
    }
    if t.sin().abs() > small {
        let v = deformable(&engine, generators, tol, PERIOD_ZERO_TOL)?;
        require(v.holds, "nonzero imaginary", v.max_abs)?;
    }
    let primitive = Primitive::new(engine, setup, *tol);
    let c = Complex::from_polar(T::one(), -t);
    Ok(surface_with_coefficient(format!("weierstrass[t={t}]"), primitive, setup.domain.clone(), c))
}

/// `Re(e^{-it} F)` without any period check. When periods do not vanish the
/// positions depend on how paths are routed around the punctures, but the
/// derivatives (and so every pointwise quantity, and every form not
/// involving the position) are exact.
pub fn local_immersion<T: Real>(
    data: &WeierstrassData<T>,
    setup: &ChartSetup<T>,
    t: T,
    tol: &Tolerances<T>,
) -> Result<ParametricSurface<T>> {
    let primitive = Primitive::new(PeriodEngine::new(data)?, setup, *tol);
    let c = Complex::from_polar(T::one(), -t);
    Ok(surface_with_coefficient(format!("weierstrass-local[t={t}]"), primitive, setup.domain.clone(), c))
}

/// `x = Re int Phi`.
pub fn build_immersion<T: Real>(
    data: &WeierstrassData<T>,
    setup: &ChartSetup<T>,
    generators: &[ComplexPath<T>],
    tol: &Tolerances<T>,
) -> Result<ParametricSurface<T>> {
    Ok(associate_immersion(data, setup, generators, T::zero(), tol)?.renamed("weierstrass"))
}

/// `y = Im int Phi`, the conjugate minimal surface.
pub fn conjugate_immersion<T: Real>(
    data: &WeierstrassData<T>,
    setup: &ChartSetup<T>,
    generators: &[ComplexPath<T>],
    tol: &Tolerances<T>,
) -> Result<ParametricSurface<T>> {
    let engine = PeriodEngine::new(data)?;
    let v = deformable(&engine, generators, tol, PERIOD_ZERO_TOL)?;
    require(v.holds, "nonzero imaginary", v.max_abs)?;
    let primitive = Primitive::new(engine, setup, *tol);
    let c = Complex::new(T::zero(), -T::one());
    Ok(surface_with_coefficient("weierstrass-conjugate".into(), primitive, setup.domain.clone(), c))
}

/// `cos t x + sin t y` for a minimal surface `x` and its conjugate `y`.
pub fn associate_minimal<T: Real>(x: &ParametricSurface<T>, y: &ParametricSurface<T>, t: T) -> ParametricSurface<T> {
    ParametricSurface::linear_combination(format!("{}[t={t}]", x.name()), t.cos(), x, t.sin(), y)
}

/// `(sin(s - t) x + sin(t) x_s) / sin(s)`: the family member at `t` from two
/// of its members.
pub fn reconstruct_family<T: Real>(
    x: &ParametricSurface<T>,
    x_s: &ParametricSurface<T>,
    s: T,
    t: T,
) -> Result<ParametricSurface<T>> {
    let sin_s = s.sin();
    if sin_s.abs() < T::lit(1e-12) {
        return Err(GeomError::InvalidParameters("reconstruction needs sin(s) != 0".into()));
    }
    Ok(ParametricSurface::linear_combination(
        format!("{}[t={t}]", x.name()),
        (s - t).sin() / sin_s,
        x,
        t.sin() / sin_s,
        x_s,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::frame_at;
    use crate::weierstrass::FactoredRational;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn catenoid_data() -> WeierstrassData<f64> {
        WeierstrassData::new(
            FactoredRational::linear(c(0.0, 0.0)),
            FactoredRational::new(c(1.0, 0.0), vec![(c(0.0, 0.0), -1)]),
            vec![c(0.0, 0.0)],
        )
        .unwrap()
    }

    fn exp_setup() -> ChartSetup<f64> {
        ChartSetup {
            chart: Chart::Exp { center: c(0.0, 0.0) },
            base: c(0.0, 0.0),
            domain: Domain::rect((-1.0, 1.0), (0.0, std::f64::consts::TAU)).periodic_in_v(),
        }
    }

    #[test]
    fn weierstrass_catenoid_is_analytic_catenoid() {
        let gens = [ComplexPath::circle(c(0.0, 0.0), 1.0)];
        let x = build_immersion(&catenoid_data(), &exp_setup(), &gens, &Tolerances::default()).unwrap();
        // Re F with F = (-cosh w, i sinh w, w) + const and base w = 0.
        for &(u, v) in &[(0.3, 1.0), (-0.7, 4.0), (0.0, 2.5)] {
            let p = x.position(u, v).unwrap();
            let expect = Vec3::new(1.0 - f64::cosh(u) * f64::cos(v), -f64::cosh(u) * f64::sin(v), u);
            assert!((p - expect).norm() < 1e-10, "{p:?} vs {expect:?}");
            let fr = frame_at(&x, u, v).unwrap();
            assert!(fr.mean_curvature.abs() < 1e-10);
            assert!((fr.gauss_curvature + 1.0 / f64::cosh(u).powi(4)).abs() < 1e-10);
        }
    }

    #[test]
    fn catenoid_conjugate_is_refused() {
        let gens = [ComplexPath::circle(c(0.0, 0.0), 1.0)];
        let err = conjugate_immersion(&catenoid_data(), &exp_setup(), &gens, &Tolerances::default()).unwrap_err();
        assert!(matches!(err, GeomError::Precondition(_)));
    }

    #[test]
    fn enneper_conjugate_satisfies_cauchy_riemann() {
        let d =
            WeierstrassData::new(FactoredRational::linear(c(0.0, 0.0)), FactoredRational::linear(c(0.0, 0.0)), vec![])
                .unwrap();
        let setup =
            ChartSetup { chart: Chart::Identity, base: c(0.0, 0.0), domain: Domain::rect((-1.0, 1.0), (-1.0, 1.0)) };
        let tol = Tolerances::default();
        let x = build_immersion(&d, &setup, &[], &tol).unwrap();
        let y = conjugate_immersion(&d, &setup, &[], &tol).unwrap();
        let (jx, jy) = (x.jet(0.4, -0.3).unwrap(), y.jet(0.4, -0.3).unwrap());
        // x_*(X) = y_*(J X) with J d_u = d_v, J d_v = -d_u.
        assert!((jx.xu - jy.xv).norm() < 1e-12);
        assert!((jx.xv + jy.xu).norm() < 1e-12);
        let t = 0.7;
        let direct = associate_immersion(&d, &setup, &[], t, &tol).unwrap();
        let combined = associate_minimal(&x, &y, t);
        assert!((direct.position(0.2, 0.5).unwrap() - combined.position(0.2, 0.5).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn routing_avoids_punctures_in_identity_chart() {
        // g = z^2, dh = dz has vanishing periods about 0, so the primitive
        // must not depend on which side of the puncture the path passes.
        let d = WeierstrassData::new(
            FactoredRational::new(c(1.0, 0.0), vec![(c(0.0, 0.0), 2)]),
            FactoredRational::constant(c(1.0, 0.0)),
            vec![c(0.0, 0.0)],
        )
        .unwrap();
        let setup = ChartSetup {
            chart: Chart::Identity,
            base: c(-1.0, 0.0),
            domain: Domain::rect((-2.0, 2.0), (-2.0, 2.0)).with_hole([0.0, 0.0], 0.2),
        };
        let x = build_immersion(&d, &setup, &[ComplexPath::circle(c(0.0, 0.0), 1.0)], &Tolerances::default()).unwrap();
        // F_1 = (-1/(3 z^3) - z)/2 integrates in closed form.
        let f1 = |z: Complex<f64>| (-1.0 / (3.0 * z * z * z) - z) / 2.0;
        let expect = (f1(c(1.0, 0.0)) - f1(c(-1.0, 0.0))).re;
        assert!((x.position(1.0, 0.0).unwrap().x - expect).abs() < 1e-10);
    }

    #[test]
    fn reconstruction_coefficients() {
        let d =
            WeierstrassData::new(FactoredRational::linear(c(0.0, 0.0)), FactoredRational::linear(c(0.0, 0.0)), vec![])
                .unwrap();
        let setup =
            ChartSetup { chart: Chart::Identity, base: c(0.0, 0.0), domain: Domain::rect((-1.0, 1.0), (-1.0, 1.0)) };
        let tol = Tolerances::default();
        let x = build_immersion(&d, &setup, &[], &tol).unwrap();
        let y = conjugate_immersion(&d, &setup, &[], &tol).unwrap();
        let half_pi = std::f64::consts::FRAC_PI_2;
        let back = reconstruct_family(&x, &y, half_pi, half_pi).unwrap();
        assert_eq!(back.position(0.3, 0.1).unwrap(), y.position(0.3, 0.1).unwrap());
        let minus = reconstruct_family(&x, &y, half_pi, std::f64::consts::PI).unwrap();
        assert!((minus.position(0.3, 0.1).unwrap() + x.position(0.3, 0.1).unwrap()).norm() < 1e-14);
        assert!(reconstruct_family(&x, &y, 0.0, 1.0).is_err());
    }
}
