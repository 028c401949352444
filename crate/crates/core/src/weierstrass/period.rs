//! Closed-loop periods of `Phi`, by quadrature and by exact residues.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::numeric::{integrate_path_with, Complex3, ComplexPath, Tolerances};
use crate::scalar::{exact_to_complex, ExactComplex, Real};

use super::data::{WPhi, WeierstrassData};

/// Largest allowed disagreement between quadrature and residue periods in
/// double precision. Lower precision types get a proportionally looser bound.
pub const PERIOD_MISMATCH_TOL: f64 = 1e-8;

/// Threshold below which a period counts as vanishing.
pub const PERIOD_ZERO_TOL: f64 = 1e-8;

/// Periods of one cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassPeriod<T> {
    pub cycle: ComplexPath<T>,
    pub quadrature: [Complex<T>; 3],
    pub error_estimate: T,
    /// `sum winding * residue`, exactly. The period is `2 pi i` times this.
    pub residue_sum: [ExactComplex; 3],
}

impl<T: Real> WeierstrassPeriod<T> {
    /// `2 pi i * residue_sum`, rounded to double precision.
    pub fn oracle(&self) -> [Complex<f64>; 3] {
        let two_pi_i = Complex::new(0.0, std::f64::consts::TAU);
        [0, 1, 2].map(|k| two_pi_i * exact_to_complex(&self.residue_sum[k]))
    }

    pub fn oracle_is_exactly_zero(&self) -> bool {
        self.residue_sum.iter().all(|r| r.is_zero())
    }

    pub fn quadrature_f64(&self) -> [Complex<f64>; 3] {
        self.quadrature.map(|c| Complex::new(c.re.to_f64_lossy(), c.im.to_f64_lossy()))
    }

    pub fn max_abs_re(&self) -> f64 {
        self.quadrature_f64().iter().map(|c| c.re.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_im(&self) -> f64 {
        self.quadrature_f64().iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn summary(&self) -> PeriodSummary {
        PeriodSummary {
            quadrature: self.quadrature_f64().map(|c| [c.re, c.im]),
            oracle: self.oracle().map(|c| [c.re, c.im]),
            oracle_exactly_zero: self.oracle_is_exactly_zero(),
            error_estimate: self.error_estimate.to_f64_lossy(),
        }
    }
}

/// Serializable view of a [`WeierstrassPeriod`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodSummary {
    pub quadrature: [[f64; 2]; 3],
    pub oracle: [[f64; 2]; 3],
    pub oracle_exactly_zero: bool,
    pub error_estimate: f64,
}

/// `Phi` in floating point together with its exact poles and residues.
#[derive(Debug, Clone)]
pub struct PeriodEngine<T> {
    phi: WPhi<Complex<T>>,
    /// Pole location (as a float) and exact residue of each component.
    residues: [Vec<(Complex<T>, ExactComplex)>; 3],
    poles: Vec<Complex<T>>,
}

impl<T: Real> PeriodEngine<T> {
    pub fn new(data: &WeierstrassData<T>) -> Result<Self> {
        let exact = data.phi_exact()?;
        let to_t = |z: &ExactComplex| {
            let c = exact_to_complex(z);
            Complex::new(T::lit(c.re), T::lit(c.im))
        };
        let residues = [0, 1, 2]
            .map(|k| exact.components[k].residues().into_iter().map(|(p, r)| (to_t(&p), r)).collect::<Vec<_>>());
        let poles = exact.poles().iter().map(to_t).collect();
        Ok(Self { phi: data.phi(), residues, poles })
    }

    pub fn phi(&self) -> &WPhi<Complex<T>> {
        &self.phi
    }

    pub fn poles(&self) -> &[Complex<T>] {
        &self.poles
    }

    /// Residues of component `k` at its poles.
    pub fn residues(&self, k: usize) -> &[(Complex<T>, ExactComplex)] {
        &self.residues[k]
    }

    /// Exact `sum winding * residue` for a closed path.
    pub fn residue_sum(&self, cycle: &ComplexPath<T>) -> [ExactComplex; 3] {
        [0, 1, 2].map(|k| {
            self.residues[k].iter().fold(ExactComplex::zero(), |acc, (p, r)| {
                let w = cycle.winding_number(*p);
                acc + r.clone() * ExactComplex::from(num_rational::BigRational::from_integer(w.into()))
            })
        })
    }

    /// Quadrature periods of a closed path, cross-checked against the
    /// residue theorem.
    pub fn period(&self, cycle: &ComplexPath<T>, tol: &Tolerances<T>) -> Result<WeierstrassPeriod<T>> {
        if !cycle.is_closed() {
            return Err(GeomError::InvalidParameters("period requires a closed path".into()));
        }
        let scale = T::one() + self.poles.iter().map(|p| p.norm()).fold(T::zero(), T::max);
        cycle.check_clearance(&self.poles, T::lit(1e-9) * scale)?;

        let (value, err) = integrate_path_with(|z| Ok(Complex3(self.phi.eval(z))), cycle, tol)?;
        let out = WeierstrassPeriod {
            cycle: cycle.clone(),
            quadrature: value.0,
            error_estimate: err,
            residue_sum: self.residue_sum(cycle),
        };
        let quad = out.quadrature_f64();
        let oracle = out.oracle();
        let diff = (0..3).map(|k| (quad[k] - oracle[k]).norm()).fold(0.0, f64::max);
        let magnitude = oracle.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let allowed = PERIOD_MISMATCH_TOL.max(1e3 * T::eps().to_f64_lossy() * magnitude);
        if diff > allowed {
            return Err(GeomError::PeriodMismatch {
                quadrature: format!("{quad:?}"),
                oracle: format!("{oracle:?}"),
                difference: diff,
            });
        }
        Ok(out)
    }
}

/// `period(phi, cycle)` as a free function.
pub fn period<T: Real>(
    data: &WeierstrassData<T>,
    cycle: &ComplexPath<T>,
    tol: &Tolerances<T>,
) -> Result<WeierstrassPeriod<T>> {
    PeriodEngine::new(data)?.period(cycle, tol)
}

/// Outcome of a period test over a list of generators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodVerdict {
    pub holds: bool,
    /// Largest offending magnitude seen over all generators.
    pub max_abs: f64,
    /// Index of the generator with the largest magnitude, when the verdict
    /// fails.
    pub offending: Option<usize>,
}

fn verdict<T: Real>(
    engine: &PeriodEngine<T>,
    generators: &[ComplexPath<T>],
    tol: &Tolerances<T>,
    threshold: f64,
    part: impl Fn(&WeierstrassPeriod<T>) -> f64,
) -> Result<PeriodVerdict> {
    let mut worst: (f64, Option<usize>) = (0.0, None);
    for (i, g) in generators.iter().enumerate() {
        let m = part(&engine.period(g, tol)?);
        if worst.1.is_none() || m > worst.0 {
            worst = (m, Some(i));
        }
    }
    let holds = worst.0 < threshold;
    Ok(PeriodVerdict { holds, max_abs: worst.0, offending: if holds { None } else { worst.1 } })
}

/// `Re int Phi` vanishes on every generator: `Re int Phi` is single valued.
pub fn well_defined<T: Real>(
    engine: &PeriodEngine<T>,
    generators: &[ComplexPath<T>],
    tol: &Tolerances<T>,
    threshold: f64,
) -> Result<PeriodVerdict> {
    verdict(engine, generators, tol, threshold, |p| p.max_abs_re())
}

/// `Im int Phi` vanishes on every generator: the conjugate surface and hence
/// the whole associate circle is single valued.
pub fn deformable<T: Real>(
    engine: &PeriodEngine<T>,
    generators: &[ComplexPath<T>],
    tol: &Tolerances<T>,
    threshold: f64,
) -> Result<PeriodVerdict> {
    verdict(engine, generators, tol, threshold, |p| p.max_abs_im())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::rational::FactoredRational;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn data(
        g: Vec<(Complex<f64>, i32)>,
        dh: Vec<(Complex<f64>, i32)>,
        punctures: Vec<Complex<f64>>,
    ) -> WeierstrassData<f64> {
        WeierstrassData::new(FactoredRational::new(c(1.0, 0.0), g), FactoredRational::new(c(1.0, 0.0), dh), punctures)
            .unwrap()
    }

    #[test]
    fn catenoid_period_about_origin() {
        let d = data(vec![(c(0.0, 0.0), 1)], vec![(c(0.0, 0.0), -1)], vec![c(0.0, 0.0)]);
        let p = period(&d, &ComplexPath::circle(c(0.0, 0.0), 1.0), &Tolerances::default()).unwrap();
        let expect = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, std::f64::consts::TAU)];
        for (q, e) in p.quadrature.iter().zip(expect) {
            assert!((*q - e).norm() < 1e-10);
        }
        assert!(!p.oracle_is_exactly_zero());
        let engine = PeriodEngine::new(&d).unwrap();
        let gens = [ComplexPath::circle(c(0.0, 0.0), 1.0)];
        assert!(well_defined(&engine, &gens, &Tolerances::default(), PERIOD_ZERO_TOL).unwrap().holds);
        let def = deformable(&engine, &gens, &Tolerances::default(), PERIOD_ZERO_TOL).unwrap();
        assert!(!def.holds);
        assert_eq!(def.offending, Some(0));
    }

    #[test]
    fn square_gauss_map_has_zero_period() {
        let d = data(vec![(c(0.0, 0.0), 2)], vec![], vec![c(0.0, 0.0)]);
        let p = period(&d, &ComplexPath::circle(c(0.0, 0.0), 1.0), &Tolerances::default()).unwrap();
        assert!(p.oracle_is_exactly_zero());
        assert!(p.max_abs_re().max(p.max_abs_im()) < 1e-10);
    }

    #[test]
    fn enneper_and_empty_generator_list() {
        let d = data(vec![(c(0.0, 0.0), 1)], vec![(c(0.0, 0.0), 1)], vec![]);
        let engine = PeriodEngine::new(&d).unwrap();
        assert!(engine.poles().is_empty());
        let p = engine.period(&ComplexPath::circle(c(0.3, -0.2), 2.0), &Tolerances::default()).unwrap();
        assert!(p.oracle_is_exactly_zero());
        assert!(p.max_abs_re().max(p.max_abs_im()) < 1e-10);
        let tol = Tolerances::default();
        assert!(well_defined(&engine, &[], &tol, PERIOD_ZERO_TOL).unwrap().holds);
        assert!(deformable(&engine, &[], &tol, PERIOD_ZERO_TOL).unwrap().holds);
    }

    #[test]
    fn path_through_pole_is_rejected() {
        let d = data(vec![(c(0.0, 0.0), 1)], vec![(c(0.0, 0.0), -1)], vec![c(0.0, 0.0)]);
        let err = period(&d, &ComplexPath::circle(c(1.0, 0.0), 1.0), &Tolerances::default()).unwrap_err();
        assert!(matches!(err, GeomError::PunctureClearance { .. }));
    }
}
