//! Weierstrass data `(g, dh)`, the null form `Phi`, regularity bookkeeping
//! and the JSON input-file format.

use std::ops::Neg;

use num_complex::Complex;
use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::numeric::ComplexPath;
use crate::scalar::{exact_complex, ExactComplex, Real};

use super::rational::{FactoredRational, RationalFn};

/// Gauss-map projection `g`, height differential density `dh` and the
/// declared punctures of the domain `C \ punctures`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassData<T> {
    pub gauss_projection: FactoredRational<Complex<T>>,
    pub dh: FactoredRational<Complex<T>>,
    pub punctures: Vec<Complex<T>>,
}

/// The three component densities of `Phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct WPhi<F> {
    pub components: [RationalFn<F>; 3],
}

/// `((1/g - g) dh / 2, i (1/g + g) dh / 2, dh)` over any field of the form
/// `Complex<R>`.
pub fn assemble_phi<R>(g: &FactoredRational<Complex<R>>, dh: &FactoredRational<Complex<R>>) -> WPhi<Complex<R>>
where
    R: Clone + Num + Neg<Output = R> + std::fmt::Debug,
{
    let one = R::one();
    let half = Complex::new(one.clone() / (one.clone() + one.clone()), R::zero());
    let i_half = Complex::new(R::zero(), one.clone() / (one.clone() + one));
    let dh_r = dh.to_rational();
    let inv_g_dh = g.recip().to_rational().mul(&dh_r);
    let g_dh = g.to_rational().mul(&dh_r);
    WPhi { components: [inv_g_dh.sub(&g_dh).scale_by(&half), inv_g_dh.add(&g_dh).scale_by(&i_half), dh_r] }
}

impl<F: crate::scalar::Field> WPhi<F> {
    /// Union of the poles of all components.
    pub fn poles(&self) -> Vec<F> {
        let mut out: Vec<F> = Vec::new();
        for c in &self.components {
            for (p, _) in c.poles() {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
        }
        out
    }
}

impl<T: Real> WPhi<Complex<T>> {
    pub fn eval(&self, z: Complex<T>) -> [Complex<T>; 3] {
        [self.components[0].eval(z), self.components[1].eval(z), self.components[2].eval(z)]
    }

    /// Values and `z`-derivatives of the three densities.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> ([Complex<T>; 3], [Complex<T>; 3]) {
        let a = self.components[0].eval_with_derivative(z);
        let b = self.components[1].eval_with_derivative(z);
        let c = self.components[2].eval_with_derivative(z);
        ([a.0, b.0, c.0], [a.1, b.1, c.1])
    }

    /// `|Phi_1^2 + Phi_2^2 + Phi_3^2| / sum |Phi_k|^2` at `z`.
    pub fn null_defect(&self, z: Complex<T>) -> T {
        let p = self.eval(z);
        let sum = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        let scale = p.iter().map(|c| c.norm_sqr()).sum::<T>();
        if scale == T::zero() {
            T::zero()
        } else {
            sum.norm() / scale
        }
    }
}

/// Fixed pseudo-random sample points in the square `[-2, 2]^2` (a
/// two-dimensional Halton sequence), used for identity checks.
pub fn sample_points<T: Real>(n: usize) -> Vec<Complex<T>> {
    fn radical_inverse(mut i: usize, base: usize) -> f64 {
        let (mut f, mut r) = (1.0, 0.0);
        while i > 0 {
            f /= base as f64;
            r += f * (i % base) as f64;
            i /= base;
        }
        r
    }
    (1..=n)
        .map(|i| Complex::new(T::lit(4.0 * radical_inverse(i, 2) - 2.0), T::lit(4.0 * radical_inverse(i, 3) - 2.0)))
        .collect()
}

/// A point where the induced metric of `Re int Phi` vanishes or blows up.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchPoint {
    pub re: f64,
    pub im: f64,
    pub order_g: i32,
    pub order_dh: i32,
}

impl<T: Real> WeierstrassData<T> {
    pub fn new(
        gauss_projection: FactoredRational<Complex<T>>,
        dh: FactoredRational<Complex<T>>,
        punctures: Vec<Complex<T>>,
    ) -> Result<Self> {
        if gauss_projection.scale.norm() == T::zero() {
            return Err(GeomError::InvalidParameters("g is identically zero".into()));
        }
        if dh.scale.norm() == T::zero() {
            return Err(GeomError::InvalidParameters("dh is identically zero".into()));
        }
        Ok(Self { gauss_projection, dh, punctures })
    }

    pub fn phi(&self) -> WPhi<Complex<T>> {
        assemble_phi(&self.gauss_projection, &self.dh)
    }

    /// The same data over the Gaussian rationals. Every finite float is a
    /// dyadic rational, so this loses nothing.
    pub fn exact(&self) -> Result<(FactoredRational<ExactComplex>, FactoredRational<ExactComplex>)> {
        let conv = |z: &Complex<T>| {
            exact_complex(Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy()))
                .ok_or_else(|| GeomError::InvalidParameters("non-finite Weierstrass coefficient".into()))
        };
        let map = |f: &FactoredRational<Complex<T>>| -> Result<FactoredRational<ExactComplex>> {
            let scale = conv(&f.scale)?;
            let factors = f.factors.iter().map(|(a, m)| Ok((conv(a)?, *m))).collect::<Result<Vec<_>>>()?;
            Ok(FactoredRational::new(scale, factors))
        };
        Ok((map(&self.gauss_projection)?, map(&self.dh)?))
    }

    pub fn phi_exact(&self) -> Result<WPhi<ExactComplex>> {
        let (g, dh) = self.exact()?;
        Ok(assemble_phi(&g, &dh))
    }

    fn is_puncture(&self, q: Complex<T>) -> bool {
        let tol = T::lit(1e-12);
        self.punctures.iter().any(|p| (*p - q).norm() <= tol * (T::one() + p.norm()))
    }

    /// Points off the declared punctures where `ord(dh) != |ord(g)|`, i.e.
    /// where `(|g| + 1/|g|)^2 |dh|^2 / 4` degenerates.
    pub fn regularity_check(&self) -> Vec<BranchPoint> {
        let mut candidates: Vec<Complex<T>> = Vec::new();
        for (a, _) in self.gauss_projection.factors.iter().chain(&self.dh.factors) {
            if !candidates.contains(a) {
                candidates.push(*a);
            }
        }
        candidates
            .into_iter()
            .filter(|q| !self.is_puncture(*q))
            .filter_map(|q| {
                let og = self.gauss_projection.order_at(&q);
                let od = self.dh.order_at(&q);
                (od != og.abs()).then(|| BranchPoint {
                    re: q.re.to_f64_lossy(),
                    im: q.im.to_f64_lossy(),
                    order_g: og,
                    order_dh: od,
                })
            })
            .collect()
    }

    /// Circles of radius `radius` about each puncture.
    pub fn puncture_circles(&self, radius: T) -> Vec<ComplexPath<T>> {
        self.punctures.iter().map(|p| ComplexPath::circle(*p, radius)).collect()
    }
}

/// A rational function as it appears in an input file: either factored or as
/// ascending coefficient lists of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    /// `scale * prod (z - a)^mult`; negative `mult` marks a pole.
    Roots {
        roots: Vec<[f64; 3]>,
        #[serde(default = "one_pair")]
        scale: [f64; 2],
    },
    Coefficients {
        num: Vec<[f64; 2]>,
        den: Vec<[f64; 2]>,
    },
}

fn one_pair() -> [f64; 2] {
    [1.0, 0.0]
}

/// Closed circle in the `z`-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleSpec {
    pub center: [f64; 2],
    pub radius: f64,
    #[serde(default = "one_turn")]
    pub turns: i32,
}

fn one_turn() -> i32 {
    1
}

/// Contents of a Weierstrass input file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassSpec {
    pub g: RationalSpec,
    pub dh: RationalSpec,
    #[serde(default)]
    pub punctures: Vec<[f64; 2]>,
    #[serde(default)]
    pub cycles: Vec<CycleSpec>,
}

impl RationalSpec {
    pub fn to_factored(&self) -> Result<FactoredRational<Complex<f64>>> {
        let c = |p: &[f64; 2]| Complex::new(p[0], p[1]);
        match self {
            RationalSpec::Roots { roots, scale } => {
                let mut factors = Vec::with_capacity(roots.len());
                for r in roots {
                    if r[2].fract() != 0.0 || !r[2].is_finite() {
                        return Err(GeomError::InvalidParameters(format!(
                            "root multiplicity {} is not an integer",
                            r[2]
                        )));
                    }
                    factors.push((Complex::new(r[0], r[1]), r[2] as i32));
                }
                Ok(FactoredRational::new(c(scale), factors))
            }
            RationalSpec::Coefficients { num, den } => {
                FactoredRational::from_coefficients(num.iter().map(c).collect(), den.iter().map(c).collect())
                    .ok_or_else(|| GeomError::InvalidParameters("zero numerator or denominator".into()))
            }
        }
    }
}

impl WeierstrassSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GeomError::InvalidParameters(format!("Weierstrass input: {e}")))
    }

    pub fn data(&self) -> Result<WeierstrassData<f64>> {
        WeierstrassData::new(
            self.g.to_factored()?,
            self.dh.to_factored()?,
            self.punctures.iter().map(|p| Complex::new(p[0], p[1])).collect(),
        )
    }

    pub fn cycle_paths(&self) -> Vec<ComplexPath<f64>> {
        self.cycles
            .iter()
            .map(|c| ComplexPath::Circle {
                center: Complex::new(c.center[0], c.center[1]),
                radius: c.radius,
                turns: c.turns,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn catenoid() -> WeierstrassData<f64> {
        WeierstrassData::new(
            FactoredRational::linear(c(0.0, 0.0)),
            FactoredRational::new(c(1.0, 0.0), vec![(c(0.0, 0.0), -1)]),
            vec![c(0.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn catenoid_phi_components() {
        let phi = catenoid().phi();
        for z in sample_points::<f64>(20) {
            let v = phi.eval(z);
            let expect = [(1.0 / (z * z) - 1.0) / 2.0, c(0.0, 1.0) * (1.0 / (z * z) + 1.0) / 2.0, 1.0 / z];
            for k in 0..3 {
                assert!((v[k] - expect[k]).norm() < 1e-12 * (1.0 + expect[k].norm()));
            }
        }
    }

    #[test]
    fn null_identity_at_fixed_point() {
        let z = c(0.3, 0.7);
        assert!(catenoid().phi().null_defect(z) < 1e-14);
    }

    #[test]
    fn regularity_bookkeeping() {
        assert!(catenoid().regularity_check().is_empty());
        let square = WeierstrassData::new(
            FactoredRational::new(c(1.0, 0.0), vec![(c(0.0, 0.0), 2)]),
            FactoredRational::constant(c(1.0, 0.0)),
            vec![],
        )
        .unwrap();
        let b = square.regularity_check();
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].order_g, b[0].order_dh), (2, 0));
        let declared = WeierstrassData { punctures: vec![c(0.0, 0.0)], ..square };
        assert!(declared.regularity_check().is_empty());
    }

    #[test]
    fn input_file_parses_both_shapes() {
        let text = r#"{
            "g": {"roots": [[1,0,2],[-1,0,2]], "scale": [1,0]},
            "dh": {"num": [[1,0]], "den": [[1,0]]},
            "punctures": [[1,0],[-1,0]],
            "cycles": [{"center": [1,0], "radius": 0.5, "turns": 1}]
        }"#;
        let spec = WeierstrassSpec::from_json(text).unwrap();
        let data = spec.data().unwrap();
        assert_eq!(data.gauss_projection.factors.len(), 2);
        assert!(data.dh.factors.is_empty());
        assert_eq!(spec.cycle_paths().len(), 1);
        assert!(WeierstrassSpec::from_json("{}").is_err());
    }
}
