//! Rational functions with factored denominators and their exact residues.

use num_complex::Complex;

use crate::scalar::{Field, Real};

use super::poly::{field_int, Poly};

/// `scale * prod (z - a)^m` with signed multiplicities: positive for zeros,
/// negative for poles. Used for user-supplied data `g` and `dh`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredRational<F> {
    pub scale: F,
    pub factors: Vec<(F, i32)>,
}

impl<F: Field> FactoredRational<F> {
    /// Merges repeated points and drops cancelled factors.
    pub fn new(scale: F, factors: Vec<(F, i32)>) -> Self {
        let mut merged: Vec<(F, i32)> = Vec::new();
        for (a, m) in factors {
            match merged.iter_mut().find(|(b, _)| *b == a) {
                Some((_, k)) => *k += m,
                None => merged.push((a, m)),
            }
        }
        merged.retain(|(_, m)| *m != 0);
        Self { scale, factors: merged }
    }

    pub fn constant(c: F) -> Self {
        Self::new(c, Vec::new())
    }

    /// `z - a`.
    pub fn linear(a: F) -> Self {
        Self::new(F::one(), vec![(a, 1)])
    }

    pub fn recip(&self) -> Self {
        Self::new(F::one() / self.scale.clone(), self.factors.iter().map(|(a, m)| (a.clone(), -m)).collect())
    }

    /// Order of vanishing at `q` (negative at poles).
    pub fn order_at(&self, q: &F) -> i32 {
        self.factors.iter().filter(|(a, _)| a == q).map(|(_, m)| *m).sum()
    }

    pub fn to_rational(&self) -> RationalFn<F> {
        let zeros: Vec<(F, u32)> =
            self.factors.iter().filter(|(_, m)| *m > 0).map(|(a, m)| (a.clone(), *m as u32)).collect();
        let poles = self.factors.iter().filter(|(_, m)| *m < 0).map(|(a, m)| (a.clone(), m.unsigned_abs())).collect();
        RationalFn::new(Poly::from_roots(&zeros).scale(&self.scale), F::one(), poles)
    }

    /// Maps every coefficient into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> FactoredRational<G> {
        FactoredRational::new(f(&self.scale), self.factors.iter().map(|(a, m)| (f(a), *m)).collect())
    }
}

impl<T: Real> FactoredRational<Complex<T>> {
    /// Factors `num / den` given as ascending coefficient lists. The roots
    /// are found numerically, so the factored form is accurate only to the
    /// root finder's precision.
    pub fn from_coefficients(num: Vec<Complex<T>>, den: Vec<Complex<T>>) -> Option<Self> {
        let (n, d) = (Poly::new(num), Poly::new(den));
        if n.is_zero() || d.is_zero() {
            return None;
        }
        let cluster = T::lit(1e-6);
        let mut factors: Vec<(Complex<T>, i32)> = n.roots(cluster).into_iter().map(|(a, m)| (a, m as i32)).collect();
        factors.extend(d.roots(cluster).into_iter().map(|(a, m)| (a, -(m as i32))));
        // Cancel numerically coincident zero/pole pairs.
        let tol = cluster * (T::one() + factors.iter().map(|(a, _)| a.norm()).fold(T::zero(), T::max));
        let mut merged: Vec<(Complex<T>, i32)> = Vec::new();
        for (a, m) in factors {
            match merged.iter_mut().find(|(b, _)| (*b - a).norm() < tol) {
                Some((_, k)) => *k += m,
                None => merged.push((a, m)),
            }
        }
        Some(Self::new(n.leading() / d.leading(), merged))
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.factors.iter().fold(self.scale, |acc, (a, m)| acc * (z - *a).powi(*m))
    }
}

/// `N(z) / (s * prod (z - p)^m)`: a dense numerator over a factored
/// denominator. Residues only need the pole list, so it is kept explicit.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn<F> {
    num: Poly<F>,
    scale: F,
    poles: Vec<(F, u32)>,
}

impl<F: Field> RationalFn<F> {
    /// Panics if `scale` is zero.
    pub fn new(num: Poly<F>, scale: F, poles: Vec<(F, u32)>) -> Self {
        assert!(!scale.is_zero(), "denominator scale must be nonzero");
        let mut merged: Vec<(F, u32)> = Vec::new();
        for (p, m) in poles {
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, k)) => *k += m,
                None => merged.push((p, m)),
            }
        }
        merged.retain(|(_, m)| *m > 0);
        let mut out = Self { num, scale, poles: merged };
        out.reduce();
        out
    }

    pub fn zero() -> Self {
        Self { num: Poly::new(Vec::new()), scale: F::one(), poles: Vec::new() }
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denominator_scale(&self) -> &F {
        &self.scale
    }

    pub fn poles(&self) -> &[(F, u32)] {
        &self.poles
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels pole factors that divide the numerator exactly.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.poles.clear();
            self.scale = F::one();
            return;
        }
        for (p, m) in self.poles.iter_mut() {
            while *m > 0 {
                match self.num.deflate(p) {
                    Some(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        self.poles.retain(|(_, m)| *m > 0);
    }

    fn denominator_poly(poles: &[(F, u32)]) -> Poly<F> {
        Poly::from_roots(poles)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut poles = self.poles.clone();
        poles.extend(other.poles.iter().cloned());
        Self::new(self.num.mul(&other.num), self.scale.clone() * other.scale.clone(), poles)
    }

    pub fn scale_by(&self, a: &F) -> Self {
        Self::new(self.num.scale(a), self.scale.clone(), self.poles.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Common denominator: the least common multiple of the factored
        // denominators.
        let mut lcm: Vec<(F, u32)> = self.poles.clone();
        for (p, m) in &other.poles {
            match lcm.iter_mut().find(|(q, _)| q == p) {
                Some((_, k)) => *k = (*k).max(*m),
                None => lcm.push((p.clone(), *m)),
            }
        }
        let missing = |own: &[(F, u32)]| -> Vec<(F, u32)> {
            lcm.iter()
                .map(|(p, m)| {
                    let have = own.iter().find(|(q, _)| q == p).map_or(0, |(_, k)| *k);
                    (p.clone(), m - have)
                })
                .collect()
        };
        let a = self.num.mul(&Self::denominator_poly(&missing(&self.poles))).scale(&other.scale);
        let b = other.num.mul(&Self::denominator_poly(&missing(&other.poles))).scale(&self.scale);
        Self::new(a.add(&b), self.scale.clone() * other.scale.clone(), lcm)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_by(&-F::one()))
    }

    /// Exact value where defined (`None` at a pole).
    pub fn eval_field(&self, z: &F) -> Option<F> {
        let mut den = self.scale.clone();
        for (p, m) in &self.poles {
            for _ in 0..*m {
                den = den * (z.clone() - p.clone());
            }
        }
        (!den.is_zero()).then(|| self.num.eval(z) / den)
    }

    /// Residue at the pole `index`: the coefficient of `w^{m-1}` in
    /// `N(p + w) / (s prod_{j != i} (p - p_j + w)^{m_j})`.
    pub fn residue(&self, index: usize) -> F {
        let (p, m) = &self.poles[index];
        let m = *m as usize;
        let mut series: Vec<F> = self.num.taylor_shift(p);
        series.resize(m.max(series.len()), F::zero());
        series.truncate(m);
        for (j, (q, mj)) in self.poles.iter().enumerate() {
            if j == index {
                continue;
            }
            // 1 / (d + w)^k = sum_n (-1)^n C(k+n-1, n) w^n / d^{k+n}
            let d = p.clone() - q.clone();
            let k = *mj as i64;
            let mut inv_dk = F::one();
            for _ in 0..k {
                inv_dk = inv_dk / d.clone();
            }
            let mut factor = Vec::with_capacity(m);
            let mut term = inv_dk;
            for n in 0..m {
                if n > 0 {
                    let num: F = field_int(-(k + n as i64 - 1));
                    term = term * num / (field_int::<F>(n as i64) * d.clone());
                }
                factor.push(term.clone());
            }
            series = truncated_product(&series, &factor, m);
        }
        series[m - 1].clone() / self.scale.clone()
    }

    /// Residues at every pole, in pole order.
    pub fn residues(&self) -> Vec<(F, F)> {
        (0..self.poles.len()).map(|i| (self.poles[i].0.clone(), self.residue(i))).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RationalFn<G> {
        RationalFn::new(
            Poly::new(self.num.coeffs().iter().map(&f).collect()),
            f(&self.scale),
            self.poles.iter().map(|(p, m)| (f(p), *m)).collect(),
        )
    }
}

fn truncated_product<F: Field>(a: &[F], b: &[F], len: usize) -> Vec<F> {
    (0..len)
        .map(|n| {
            (0..=n).fold(F::zero(), |acc, i| {
                acc + a.get(i).cloned().unwrap_or_else(F::zero) * b.get(n - i).cloned().unwrap_or_else(F::zero)
            })
        })
        .collect()
}

impl<T: Real> RationalFn<Complex<T>> {
    /// Value and first derivative, using `f' = N'/D - f * sum m/(z - p)`.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut den = self.scale;
        let mut log_d = Complex::new(T::zero(), T::zero());
        for (p, m) in &self.poles {
            let dz = z - *p;
            den = den * dz.powu(*m);
            log_d = log_d + Complex::new(T::lit(*m as f64), T::zero()) / dz;
        }
        let f = self.num.eval(&z) / den;
        let df = self.num.derivative().eval(&z) / den - f * log_d;
        (f, df)
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let mut den = self.scale;
        for (p, m) in &self.poles {
            den = den * (z - *p).powu(*m);
        }
        self.num.eval(&z) / den
    }
}
