//! One-parameter families of immersions and finite differences in `t`.

use crate::error::Result;
use crate::numeric::{ComplexPath, Jet, Tolerances, Vec3};
use crate::scalar::Real;
use crate::surface::{frame_at, Domain, FrameData, ParametricSurface};
use crate::weierstrass::{associate_immersion, associate_minimal, ChartSetup, WeierstrassData};

/// `t -> x_t`.
pub trait IsometricFamily<T>: Send + Sync {
    fn name(&self) -> String;
    fn member(&self, t: T) -> Result<ParametricSurface<T>>;
}

/// `x_t = cos t x + sin t y` from a minimal surface and its conjugate.
#[derive(Clone)]
pub struct MinimalAssociateFamily<T> {
    pub x: ParametricSurface<T>,
    pub y: ParametricSurface<T>,
}

impl<T: Real> IsometricFamily<T> for MinimalAssociateFamily<T> {
    fn name(&self) -> String {
        format!("associate({})", self.x.name())
    }

    fn member(&self, t: T) -> Result<ParametricSurface<T>> {
        Ok(associate_minimal(&self.x, &self.y, t))
    }
}

/// `x_t = Re(e^{-it} int Phi)` straight from Weierstrass data.
#[derive(Debug, Clone)]
pub struct WeierstrassFamily<T> {
    pub data: WeierstrassData<T>,
    pub setup: ChartSetup<T>,
    pub generators: Vec<ComplexPath<T>>,
    pub tol: Tolerances<T>,
}

impl<T: Real> IsometricFamily<T> for WeierstrassFamily<T> {
    fn name(&self) -> String {
        "weierstrass-associate".into()
    }

    fn member(&self, t: T) -> Result<ParametricSurface<T>> {
        associate_immersion(&self.data, &self.setup, &self.generators, t, &self.tol)
    }
}

/// Rotation by the vector `angle` (Rodrigues), as columns.
pub fn rotation_columns<T: Real>(angle: Vec3<T>) -> [Vec3<T>; 3] {
    let theta = angle.norm();
    if theta == T::zero() {
        return [Vec3::e1(), Vec3::e2(), Vec3::e3()];
    }
    let k = angle / theta;
    let (s, c) = theta.sin_cos();
    let rotate = |v: Vec3<T>| v * c + k.cross(v) * s + k * (k.dot(v) * (T::one() - c));
    [rotate(Vec3::e1()), rotate(Vec3::e2()), rotate(Vec3::e3())]
}

/// `x_t = R(t omega) x + t b`: congruences of a fixed surface.
#[derive(Clone)]
pub struct RigidMotionFamily<T> {
    pub base: ParametricSurface<T>,
    pub omega: Vec3<T>,
    pub velocity: Vec3<T>,
}

impl<T: Real> IsometricFamily<T> for RigidMotionFamily<T> {
    fn name(&self) -> String {
        format!("rigid({})", self.base.name())
    }

    fn member(&self, t: T) -> Result<ParametricSurface<T>> {
        Ok(self.base.rigidly_moved(rotation_columns(self.omega * t), self.velocity * t))
    }
}

/// Bends the cylinder `(r cos u, -r sin u, r v)` to radius `r / (1 - t)`
/// keeping the line `u = 0` fixed: isometric, but the mean curvature
/// changes with `t`.
#[derive(Debug, Clone, Copy)]
pub struct CylinderUnrollingFamily<T> {
    pub radius: T,
}

impl<T: Real> IsometricFamily<T> for CylinderUnrollingFamily<T> {
    fn name(&self) -> String {
        format!("unroll(cylinder {})", self.radius)
    }

    fn member(&self, t: T) -> Result<ParametricSurface<T>> {
        let r = self.radius;
        let big = r / (T::one() - t);
        let domain = Domain::rect((-T::one(), T::one()), (-T::one(), T::one()));
        Ok(ParametricSurface::new(format!("unrolled[t={t}]"), domain, None, move |u: T, v: T| {
            let phi = r * u / big;
            let (s, c) = phi.sin_cos();
            let k = r / big;
            Ok(Jet {
                x: Vec3::new(big * c - big + r, -big * s, r * v),
                xu: Vec3::new(-r * s, -r * c, T::zero()),
                xv: Vec3::new(T::zero(), T::zero(), r),
                xuu: Vec3::new(-r * k * c, r * k * s, T::zero()),
                xuv: Vec3::zero(),
                xvv: Vec3::zero(),
            })
        }))
    }
}

/// Five members `x_{t + k delta}`, `k = -2..=2`, for fourth-order
/// differences in `t`.
#[derive(Clone)]
pub struct FamilyStencil<T> {
    pub t: T,
    pub delta: T,
    pub members: [ParametricSurface<T>; 5],
}

/// Jets and frames of the five members at one point.
#[derive(Debug, Clone)]
pub struct StencilSample<T> {
    pub jets: [Jet<T>; 5],
    pub frames: [FrameData<T>; 5],
    pub delta: T,
}

impl<T: Real> FamilyStencil<T> {
    pub fn new(family: &dyn IsometricFamily<T>, t: T, delta: T) -> Result<Self> {
        let m = |k: f64| family.member(t + delta * T::lit(k));
        Ok(Self { t, delta, members: [m(-2.0)?, m(-1.0)?, m(0.0)?, m(1.0)?, m(2.0)?] })
    }

    pub fn center(&self) -> &ParametricSurface<T> {
        &self.members[2]
    }

    pub fn sample(&self, u: T, v: T) -> Result<StencilSample<T>> {
        let mut jets = [Jet::default(); 5];
        let mut frames = Vec::with_capacity(5);
        for (k, m) in self.members.iter().enumerate() {
            jets[k] = m.jet(u, v)?;
            frames.push(frame_at(m, u, v)?);
        }
        let frames: [FrameData<T>; 5] = frames.try_into().expect("five frames");
        Ok(StencilSample { jets, frames, delta: self.delta })
    }
}

impl<T: Real> StencilSample<T> {
    pub fn center(&self) -> &FrameData<T> {
        &self.frames[2]
    }

    /// Fourth-order first `t`-derivative of any linear quantity.
    pub fn d1<V>(&self, f: impl Fn(usize) -> V) -> V
    where
        V: std::ops::Sub<Output = V> + std::ops::Mul<T, Output = V> + std::ops::Add<Output = V>,
    {
        let c = T::one() / (T::lit(12.0) * self.delta);
        ((f(0) - f(4)) + (f(3) - f(1)) * T::lit(8.0)) * c
    }

    /// Fourth-order second `t`-derivative.
    pub fn d2<V>(&self, f: impl Fn(usize) -> V) -> V
    where
        V: std::ops::Sub<Output = V> + std::ops::Mul<T, Output = V> + std::ops::Add<Output = V>,
    {
        let c = T::one() / (T::lit(12.0) * self.delta * self.delta);
        ((f(1) + f(3)) * T::lit(16.0) - (f(0) + f(4)) - f(2) * T::lit(30.0)) * c
    }

    /// Largest change of `(E, F, G)` across the stencil.
    pub fn metric_drift(&self) -> T {
        let g0 = self.frames[2].metric;
        self.frames.iter().map(|f| (f.metric - g0).max_abs()).fold(T::zero(), T::max)
    }
}
