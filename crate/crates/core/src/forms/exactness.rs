//! Pointwise identities linking the `t`-derivatives of an associate family
//! to the force and torque forms.

use serde::Serialize;

use crate::deformation::{FamilyStencil, IsometricFamily};
use crate::error::Result;
use crate::numeric::Vec3;
use crate::scalar::Real;
use crate::surface::{apply_j, TangentVector};

/// Largest residuals over the sampled points and both coordinate vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactnessReport {
    /// `|X x' + (H x + xi) x x_*(X)|`.
    pub velocity: f64,
    /// `|xi' + H x x xi|`.
    pub normal: f64,
    /// `|X x'' + H [(X x') x x + x' x x_*(X)] + x_*(X) - 3 H sigma(X)|`.
    pub torque: f64,
    pub points: usize,
}

/// Residuals of the first- and second-order `t`-identities of `family` at
/// `t`, using fourth-order differences with step `delta`.
pub fn exactness_residuals<T: Real>(
    family: &dyn IsometricFamily<T>,
    t: T,
    delta: T,
    points: &[(T, T)],
) -> Result<ExactnessReport> {
    let stencil = FamilyStencil::new(family, t, delta)?;
    let mut rep = ExactnessReport { velocity: 0.0, normal: 0.0, torque: 0.0, points: 0 };
    let two_thirds = T::lit(2.0 / 3.0);
    for &(u, v) in points {
        let s = stencil.sample(u, v)?;
        let f = s.center();
        let h = f.mean_curvature;
        let x = f.position();
        let xp = s.d1(|k| s.jets[k].x);
        let nrm_p = s.d1(|k| s.frames[k].normal);
        rep.normal = rep.normal.max((nrm_p + x.cross(f.normal) * h).norm().to_f64_lossy());
        for (i, dir) in [TangentVector::du(), TangentVector::dv()].into_iter().enumerate() {
            let pick = |k: usize| if i == 0 { s.jets[k].xu } else { s.jets[k].xv };
            let dx = f.push(dir);
            let dxp = s.d1(pick);
            let dxpp = s.d2(pick);
            let res = dxp + (x * h + f.normal).cross(dx);
            rep.velocity = rep.velocity.max(res.norm().to_f64_lossy());
            let jdx = f.push(apply_j(f, dir));
            let sigma = x.cross(x.cross(dx)) * (two_thirds * h) + x.cross(jdx);
            let lhs: Vec3<T> = dxpp + (dxp.cross(x) + xp.cross(dx)) * h + dx - sigma * (h * T::lit(3.0));
            rep.torque = rep.torque.max(lhs.norm().to_f64_lossy());
        }
        rep.points += 1;
    }
    Ok(rep)
}
