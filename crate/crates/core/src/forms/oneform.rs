//! Vector-valued 1-forms on a surface: force, torque and custom forms.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::numeric::{Quadrature, Tolerances, Vec3};
use crate::scalar::Real;
use crate::surface::{frame_at, FrameData, ParametricSurface, TangentVector};

use super::cycle::Cycle;

/// Maximum allowed deviation of the computed mean curvature from its
/// constant value.
pub const CONSTANT_H_TOL: f64 = 1e-6;

/// Which form an evaluator represents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FormKind {
    Force,
    Torque,
    Custom(String),
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormKind::Force => write!(f, "force"),
            FormKind::Torque => write!(f, "torque"),
            FormKind::Custom(s) => write!(f, "{s}"),
        }
    }
}

type FormFn<T> = dyn Fn(&FrameData<T>, TangentVector<T>) -> Result<Vec3<T>> + Send + Sync;

/// `(p, X) -> Vec3`, linear in `X`.
#[derive(Clone)]
pub struct VectorOneForm<T> {
    kind: FormKind,
    surface: ParametricSurface<T>,
    mean_curvature: T,
    origin: Vec3<T>,
    eval: Arc<FormFn<T>>,
}

impl<T: Real> fmt::Debug for VectorOneForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorOneForm")
            .field("kind", &self.kind)
            .field("surface", &self.surface.name())
            .field("mean_curvature", &self.mean_curvature)
            .field("origin", &self.origin)
            .finish()
    }
}

/// Samples the mean curvature on an `8 x 8` grid and returns the constant
/// value: the declared one when present, otherwise the sample mean. Fails
/// when any sample deviates by more than [`CONSTANT_H_TOL`].
pub fn constant_mean_curvature<T: Real>(surface: &ParametricSurface<T>) -> Result<T> {
    let samples: Vec<T> = surface
        .domain()
        .grid(8, 8)
        .into_iter()
        .map(|(u, v)| frame_at(surface, u, v).map(|f| f.mean_curvature))
        .collect::<Result<_>>()?;
    if samples.is_empty() {
        return Err(GeomError::InvalidParameters("empty sampling grid".into()));
    }
    let reference =
        surface.declared_h().unwrap_or_else(|| samples.iter().copied().sum::<T>() / T::lit(samples.len() as f64));
    let dev = samples.iter().map(|h| (*h - reference).abs()).fold(T::zero(), T::max);
    if dev > T::lit(CONSTANT_H_TOL) {
        return Err(GeomError::NonConstantMeanCurvature {
            reference: reference.to_f64_lossy(),
            max_deviation: dev.to_f64_lossy(),
        });
    }
    Ok(reference)
}

impl<T: Real> VectorOneForm<T> {
    /// A form from an arbitrary evaluator. No curvature precondition.
    pub fn custom<F>(label: impl Into<String>, surface: &ParametricSurface<T>, f: F) -> Self
    where
        F: Fn(&FrameData<T>, TangentVector<T>) -> Result<Vec3<T>> + Send + Sync + 'static,
    {
        Self {
            kind: FormKind::Custom(label.into()),
            surface: surface.clone(),
            mean_curvature: surface.declared_h().unwrap_or_else(T::zero),
            origin: Vec3::zero(),
            eval: Arc::new(f),
        }
    }

    pub fn kind(&self) -> &FormKind {
        &self.kind
    }

    pub fn surface(&self) -> &ParametricSurface<T> {
        &self.surface
    }

    pub fn mean_curvature(&self) -> T {
        self.mean_curvature
    }

    pub fn origin(&self) -> Vec3<T> {
        self.origin
    }

    pub fn at_frame(&self, frame: &FrameData<T>, x: TangentVector<T>) -> Result<Vec3<T>> {
        (self.eval)(frame, x)
    }

    pub fn value(&self, u: T, v: T, x: TangentVector<T>) -> Result<Vec3<T>> {
        self.at_frame(&frame_at(&self.surface, u, v)?, x)
    }

    /// `int_gamma form(gamma')` with its quadrature error estimate.
    pub fn period(&self, cycle: &Cycle<T>, tol: &Tolerances<T>) -> Result<Quadrature<Vec3<T>, T>> {
        cycle.integrate(
            |s| {
                let (p, d) = cycle.eval(s);
                self.value(p[0], p[1], d.into())
            },
            tol,
        )
    }
}

/// `omega(X) = (H x + xi) x x_*(X)`.
pub fn force_form<T: Real>(surface: &ParametricSurface<T>) -> Result<VectorOneForm<T>> {
    let h = constant_mean_curvature(surface)?;
    Ok(VectorOneForm {
        kind: FormKind::Force,
        surface: surface.clone(),
        mean_curvature: h,
        origin: Vec3::zero(),
        eval: Arc::new(move |f: &FrameData<T>, x| Ok((f.position() * h + f.normal).cross(f.push(x)))),
    })
}

/// `sigma(X) = (2/3) H x x (x x x_*(X)) + x x x_*(J X)`, positions taken
/// relative to `origin`.
///
/// Every evaluation also computes `(1/3) x x [2 (H x + xi) x x_*(X) +
/// x_*(J X)]` and fails if the two disagree beyond rounding.
pub fn torque_form<T: Real>(surface: &ParametricSurface<T>, origin: Vec3<T>) -> Result<VectorOneForm<T>> {
    let h = constant_mean_curvature(surface)?;
    let eval = move |f: &FrameData<T>, x: TangentVector<T>| -> Result<Vec3<T>> {
        let p = f.position() - origin;
        let dx = f.push(x);
        let jdx = f.normal.cross(dx);
        let two_thirds = T::lit(2.0 / 3.0);
        let direct = p.cross(p.cross(dx)) * (two_thirds * h) + p.cross(jdx);
        let alt = p.cross((p * h + f.normal).cross(dx) * T::lit(2.0) + jdx) / T::lit(3.0);
        let scale = p.norm() * dx.norm() * (T::one() + h.abs() * p.norm());
        if (direct - alt).norm() > T::lit(64.0) * T::eps() * (scale + T::eps()) {
            return Err(GeomError::Precondition(format!(
                "torque self-check failed at ({}, {}): {:e}",
                f.u,
                f.v,
                (direct - alt).norm().to_f64_lossy()
            )));
        }
        Ok(direct)
    };
    Ok(VectorOneForm {
        kind: FormKind::Torque,
        surface: surface.clone(),
        mean_curvature: h,
        origin,
        eval: Arc::new(eval),
    })
}

/// `xi x x_*(X) = x_*(J X)`: closed exactly when `H = 0`. Used as a
/// non-closed control on surfaces with `H != 0`.
pub fn conormal_form<T: Real>(surface: &ParametricSurface<T>) -> VectorOneForm<T> {
    VectorOneForm::custom("conormal", surface, |f: &FrameData<T>, x| Ok(f.normal.cross(f.push(x))))
}

/// Origin-tagged force and torque periods of one cycle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodReport {
    pub cycle: String,
    pub method: PeriodMethod,
    pub force: Option<[f64; 3]>,
    pub force_error: Option<f64>,
    pub torque: Option<[f64; 3]>,
    pub torque_error: Option<f64>,
    /// Base point of the torque (positions are measured from here).
    pub origin: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeriodMethod {
    Direct,
    CrossSection,
}

fn arr<T: Real>(v: Vec3<T>) -> [f64; 3] {
    [v.x.to_f64_lossy(), v.y.to_f64_lossy(), v.z.to_f64_lossy()]
}

/// Force and (optionally) torque periods of `cycle` by direct quadrature.
pub fn period_report<T: Real>(
    surface: &ParametricSurface<T>,
    cycle: &Cycle<T>,
    with_force: bool,
    with_torque: bool,
    origin: Vec3<T>,
    tol: &Tolerances<T>,
) -> Result<PeriodReport> {
    cycle.validate(surface)?;
    let mut report = PeriodReport {
        cycle: cycle.label.clone(),
        method: PeriodMethod::Direct,
        force: None,
        force_error: None,
        torque: None,
        torque_error: None,
        origin: arr(origin),
    };
    if with_force {
        let q = force_form(surface)?.period(cycle, tol)?;
        report.force = Some(arr(q.value));
        report.force_error = Some(q.error_estimate.to_f64_lossy());
    }
    if with_torque {
        let q = torque_form(surface, origin)?.period(cycle, tol)?;
        report.torque = Some(arr(q.value));
        report.torque_error = Some(q.error_estimate.to_f64_lossy());
    }
    Ok(report)
}
