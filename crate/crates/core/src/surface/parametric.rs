use std::fmt;
use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::numeric::{fd_jet, Jet, Tolerances, Vec3};
use crate::scalar::Real;

/// Anything that can produce a second-order jet at a parameter point.
pub trait JetEvaluator<T>: Send + Sync {
    fn jet(&self, u: T, v: T) -> Result<Jet<T>>;
}

impl<T, F> JetEvaluator<T> for F
where
    F: Fn(T, T) -> Result<Jet<T>> + Send + Sync,
{
    fn jet(&self, u: T, v: T) -> Result<Jet<T>> {
        self(u, v)
    }
}

/// Parameter domain: a rectangle, optionally periodic in either direction
/// and optionally punctured by small discs.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain<T> {
    pub u: (T, T),
    pub v: (T, T),
    pub periodic_u: bool,
    pub periodic_v: bool,
    /// Removed points `(u, v)` with the clearance kept around each.
    pub holes: Vec<([T; 2], T)>,
}

impl<T: Real> Domain<T> {
    pub fn rect(u: (T, T), v: (T, T)) -> Self {
        Self { u, v, periodic_u: false, periodic_v: false, holes: Vec::new() }
    }

    pub fn periodic_in_u(mut self) -> Self {
        self.periodic_u = true;
        self
    }

    pub fn periodic_in_v(mut self) -> Self {
        self.periodic_v = true;
        self
    }

    pub fn with_hole(mut self, center: [T; 2], clearance: T) -> Self {
        self.holes.push((center, clearance));
        self
    }

    /// Longest side of the rectangle.
    pub fn extent(&self) -> T {
        (self.u.1 - self.u.0).max(self.v.1 - self.v.0)
    }

    pub fn contains(&self, u: T, v: T) -> bool {
        let in_u = self.periodic_u || (u >= self.u.0 && u <= self.u.1);
        let in_v = self.periodic_v || (v >= self.v.0 && v <= self.v.1);
        in_u && in_v && self.holes.iter().all(|(c, r)| ((u - c[0]).powi(2) + (v - c[1]).powi(2)).sqrt() >= *r)
    }

    /// Cell-centred `nu x nv` grid, skipping points inside holes.
    pub fn grid(&self, nu: usize, nv: usize) -> Vec<(T, T)> {
        let mut out = Vec::with_capacity(nu * nv);
        for i in 0..nu {
            let fu = (T::lit(i as f64) + T::lit(0.5)) / T::lit(nu as f64);
            let u = self.u.0 + (self.u.1 - self.u.0) * fu;
            for j in 0..nv {
                let fv = (T::lit(j as f64) + T::lit(0.5)) / T::lit(nv as f64);
                let v = self.v.0 + (self.v.1 - self.v.0) * fv;
                if self.contains(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// An immersion `(u, v) -> R^3` given by its jet evaluator.
///
/// Cheap to clone: the evaluator is shared.
#[derive(Clone)]
pub struct ParametricSurface<T> {
    name: String,
    domain: Domain<T>,
    declared_h: Option<T>,
    evaluator: Arc<dyn JetEvaluator<T>>,
}

impl<T: Real> fmt::Debug for ParametricSurface<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricSurface")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("declared_h", &self.declared_h)
            .finish_non_exhaustive()
    }
}

impl<T: Real> ParametricSurface<T> {
    pub fn new(
        name: impl Into<String>,
        domain: Domain<T>,
        declared_h: Option<T>,
        evaluator: impl JetEvaluator<T> + 'static,
    ) -> Self {
        Self { name: name.into(), domain, declared_h, evaluator: Arc::new(evaluator) }
    }

    /// Surface known only through positions; jets come from central
    /// differences.
    pub fn from_position<F>(
        name: impl Into<String>,
        domain: Domain<T>,
        declared_h: Option<T>,
        position: F,
        tol: Tolerances<T>,
    ) -> Self
    where
        F: Fn(T, T) -> Vec3<T> + Send + Sync + 'static,
    {
        Self::new(name, domain, declared_h, move |u, v| Ok(fd_jet(&position, u, v, 2, &tol)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain<T> {
        &self.domain
    }

    pub fn declared_h(&self) -> Option<T> {
        self.declared_h
    }

    pub fn jet(&self, u: T, v: T) -> Result<Jet<T>> {
        let j = self.evaluator.jet(u, v)?;
        if !j.is_finite() {
            return Err(GeomError::ImmersionFailure { u: u.to_f64_lossy(), v: v.to_f64_lossy() });
        }
        Ok(j)
    }

    pub fn position(&self, u: T, v: T) -> Result<Vec3<T>> {
        Ok(self.jet(u, v)?.x)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_declared_h(mut self, h: Option<T>) -> Self {
        self.declared_h = h;
        self
    }

    pub fn with_domain(mut self, domain: Domain<T>) -> Self {
        self.domain = domain;
        self
    }

    /// `x + b`.
    pub fn translated(&self, b: Vec3<T>) -> Self {
        let inner = self.clone();
        Self::new(format!("{}+b", self.name), self.domain.clone(), self.declared_h, move |u, v| {
            Ok(inner.jet(u, v)?.translated(b))
        })
    }

    /// `R x + b` for a rotation given by its columns.
    pub fn rigidly_moved(&self, rotation: [Vec3<T>; 3], b: Vec3<T>) -> Self {
        let inner = self.clone();
        let apply = move |p: Vec3<T>| rotation[0] * p.x + rotation[1] * p.y + rotation[2] * p.z;
        Self::new(format!("R({})", self.name), self.domain.clone(), self.declared_h, move |u, v| {
            let j = inner.jet(u, v)?;
            Ok(j.map(apply).translated(b))
        })
    }

    /// `a x + b y`, jet by jet. The domain and declared mean curvature are
    /// taken from `x`.
    pub fn linear_combination(name: impl Into<String>, a: T, x: &Self, b: T, y: &Self) -> Self {
        let (x, y) = (x.clone(), y.clone());
        let domain = x.domain.clone();
        let h = x.declared_h;
        Self::new(name, domain, h, move |u, v| {
            let jx = x.jet(u, v)?;
            let jy = y.jet(u, v)?;
            Ok(jx.combine(a, &jy, b))
        })
    }
}
