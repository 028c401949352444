//! Extraction of the deformation data `(k, Z)` from a sampled family and
//! residuals of the deformation equations.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::numeric::{Mat2, Vec3};
use crate::scalar::Real;
use crate::surface::{apply_j, FrameData, TangentVector};

use super::family::{FamilyStencil, IsometricFamily, StencilSample};

/// Largest tolerated change of the metric across the `t`-stencil.
pub const METRIC_DRIFT_TOL: f64 = 1e-8;

/// `k`, `Z` and derived fields at one point of `x_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationState<T> {
    pub u: T,
    pub v: T,
    pub k: T,
    pub z: TangentVector<T>,
    /// Drehriss `x_*(J Z) + k xi`.
    pub eta: Vec3<T>,
    /// `x_*(J Z) + (k + 1) xi + H x`; vanishes for the normalized
    /// associate deformation.
    pub v_field: Vec3<T>,
    /// `max_X |X x' - eta x x_*(X)|` over the coordinate vectors: how far
    /// the `t`-derivative is from an infinitesimal rotation.
    pub rotation_residual: T,
}

/// Reads `k` and `Z` off `X x' = k x_*(J X) - <X, Z> xi`.
pub fn state_from_sample<T: Real>(s: &StencilSample<T>) -> DeformationState<T> {
    let f = s.center();
    let dxu = s.d1(|k| s.jets[k].xu);
    let dxv = s.d1(|k| s.jets[k].xv);
    let (du, dv) = (TangentVector::du(), TangentVector::dv());
    let ju = f.push(apply_j(f, du));
    let jv = f.push(apply_j(f, dv));
    let k = (dxu.dot(ju) / ju.norm_squared() + dxv.dot(jv) / jv.norm_squared()) / T::lit(2.0);
    let ginv = f.metric.inverse().expect("nondegenerate metric");
    let z: TangentVector<T> = ginv.apply([-dxu.dot(f.normal), -dxv.dot(f.normal)]).into();
    let jz = f.push(apply_j(f, z));
    let eta = jz + f.normal * k;
    let rot_u = (dxu - eta.cross(f.jet.xu)).norm();
    let rot_v = (dxv - eta.cross(f.jet.xv)).norm();
    DeformationState {
        u: f.u,
        v: f.v,
        k,
        z,
        eta,
        v_field: jz + f.normal * (k + T::one()) + f.position() * f.mean_curvature,
        rotation_residual: rot_u.max(rot_v),
    }
}

/// State of `family` at `x_t(u, v)` with `t`-step `delta`.
pub fn deformation_state<T: Real>(
    family: &dyn IsometricFamily<T>,
    t: T,
    delta: T,
    u: T,
    v: T,
) -> Result<DeformationState<T>> {
    let stencil = FamilyStencil::new(family, t, delta)?;
    Ok(state_from_sample(&stencil.sample(u, v)?))
}

/// Maximum residuals of the deformation equations over a set of points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrabilityReport {
    /// `|A' X + k J A X + nabla_X Z|`.
    pub shape_evolution: f64,
    /// `|nabla k + A J Z|`.
    pub k_gradient: f64,
    /// `|nabla_X (J Z) - (k + 1) A X + H X|`.
    pub rotation_derivative: f64,
    /// `max |A'|` (entrywise in coordinates).
    pub a_prime_max: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub z_max: f64,
    pub v_field_max: f64,
    pub rotation_max: f64,
    pub metric_drift: f64,
    pub points: usize,
}

/// Christoffel symbols `Gamma^m_{ij}` from the jet: `Gamma_{ij,l} =
/// <x_ij, x_l>` raised with the inverse metric. Indexed `[m][i][j]`.
fn christoffel<T: Real>(f: &FrameData<T>) -> [[[T; 2]; 2]; 2] {
    let j = &f.jet;
    let second = [[j.xuu, j.xuv], [j.xuv, j.xvv]];
    let first = [j.xu, j.xv];
    let ginv = f.metric.inverse().expect("nondegenerate metric");
    let mut out = [[[T::zero(); 2]; 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            let lower = [second[i][k].dot(first[0]), second[i][k].dot(first[1])];
            let raised = ginv.apply(lower);
            out[0][i][k] = raised[0];
            out[1][i][k] = raised[1];
        }
    }
    out
}

/// `nabla_{d_i} W` from `W` at the point and its partials `dw[i]`.
fn covariant<T: Real>(gamma: &[[[T; 2]; 2]; 2], w: [T; 2], dw: [[T; 2]; 2], i: usize) -> [T; 2] {
    let mut out = dw[i];
    for (m, o) in out.iter_mut().enumerate() {
        for (k, wk) in w.iter().enumerate() {
            *o = *o + gamma[m][i][k] * *wk;
        }
    }
    out
}

fn d1_space<T: Real>(vals: [[T; 2]; 4], h: T) -> [T; 2] {
    // samples at -2h, -h, h, 2h
    let c = T::one() / (T::lit(12.0) * h);
    [0, 1].map(|i| (vals[0][i] - vals[3][i] + (vals[2][i] - vals[1][i]) * T::lit(8.0)) * c)
}

/// Residuals of the deformation equations of `family` at `t` over
/// `points`. The metric is required to be `t`-invariant to
/// [`METRIC_DRIFT_TOL`] (relative to its size), otherwise the family is
/// refused.
///
/// `A'` comes from fourth-order differences in `t` with step `delta`;
/// spatial derivatives of `k`, `Z`, `J Z` from fourth-order differences
/// with step `h_space`; Christoffel symbols from the second-order jet.
pub fn integrability_residuals<T: Real>(
    family: &dyn IsometricFamily<T>,
    t: T,
    delta: T,
    h_space: T,
    points: &[(T, T)],
) -> Result<IntegrabilityReport> {
    let stencil = FamilyStencil::new(family, t, delta)?;
    let mut rep = IntegrabilityReport {
        shape_evolution: 0.0,
        k_gradient: 0.0,
        rotation_derivative: 0.0,
        a_prime_max: 0.0,
        k_min: f64::INFINITY,
        k_max: f64::NEG_INFINITY,
        z_max: 0.0,
        v_field_max: 0.0,
        rotation_max: 0.0,
        metric_drift: 0.0,
        points: 0,
    };
    let offsets = [-2.0, -1.0, 1.0, 2.0];
    for &(u, v) in points {
        let sample = stencil.sample(u, v)?;
        let f = *sample.center();
        let drift = sample.metric_drift() / (T::one() + f.metric.max_abs());
        if drift > T::lit(METRIC_DRIFT_TOL) {
            return Err(GeomError::NonIsometricFamily { drift: drift.to_f64_lossy() });
        }
        rep.metric_drift = rep.metric_drift.max(drift.to_f64_lossy());
        let st = state_from_sample(&sample);

        // Neighbouring states along u and v.
        let mut k_n = [[T::zero(); 2]; 4];
        let mut z_n = [[[T::zero(); 2]; 4]; 2];
        let mut jz_n = [[[T::zero(); 2]; 4]; 2];
        for (dir, (zs, jzs)) in z_n.iter_mut().zip(jz_n.iter_mut()).enumerate() {
            for (n, off) in offsets.iter().enumerate() {
                let d = h_space * T::lit(*off);
                let (a, b) = if dir == 0 { (u + d, v) } else { (u, v + d) };
                let s = stencil.sample(a, b)?;
                let sn = state_from_sample(&s);
                k_n[n][dir] = sn.k;
                zs[n] = sn.z.to_array();
                jzs[n] = apply_j(s.center(), sn.z).to_array();
            }
        }
        let grad_k_coord = [0, 1].map(|dir| d1_space([0, 1, 2, 3].map(|n| [k_n[n][dir], T::zero()]), h_space)[0]);
        let dz = [d1_space(z_n[0], h_space), d1_space(z_n[1], h_space)];
        let djz = [d1_space(jz_n[0], h_space), d1_space(jz_n[1], h_space)];

        let gamma = christoffel(&f);
        let jmat = f.j_matrix();
        let a = f.shape;
        let a_prime = Mat2::new(
            sample.d1(|k| sample.frames[k].shape.m[0][0]),
            sample.d1(|k| sample.frames[k].shape.m[0][1]),
            sample.d1(|k| sample.frames[k].shape.m[1][0]),
            sample.d1(|k| sample.frames[k].shape.m[1][1]),
        );
        rep.a_prime_max = rep.a_prime_max.max(a_prime.max_abs().to_f64_lossy());
        let z = st.z.to_array();
        let jz = apply_j(&f, st.z).to_array();
        let norm = |w: [T; 2]| f.norm(w.into()).to_f64_lossy();
        let h = f.mean_curvature;

        for i in 0..2 {
            let x = if i == 0 { [T::one(), T::zero()] } else { [T::zero(), T::one()] };
            let nz = covariant(&gamma, z, dz, i);
            let ax = a.apply(x);
            let jax = jmat.apply(ax);
            let apx = a_prime.apply(x);
            let r_shape = [0, 1].map(|m| apx[m] + st.k * jax[m] + nz[m]);
            rep.shape_evolution = rep.shape_evolution.max(norm(r_shape));

            let njz = covariant(&gamma, jz, djz, i);
            let r_rot = [0, 1].map(|m| njz[m] - (st.k + T::one()) * ax[m] + h * x[m]);
            rep.rotation_derivative = rep.rotation_derivative.max(norm(r_rot));
        }
        let ginv = f.metric.inverse().expect("nondegenerate metric");
        let grad_k = ginv.apply(grad_k_coord);
        let ajz = a.apply(jmat.apply(z));
        rep.k_gradient = rep.k_gradient.max(norm([grad_k[0] + ajz[0], grad_k[1] + ajz[1]]));

        rep.k_min = rep.k_min.min(st.k.to_f64_lossy());
        rep.k_max = rep.k_max.max(st.k.to_f64_lossy());
        rep.z_max = rep.z_max.max(f.norm(st.z).to_f64_lossy());
        rep.v_field_max = rep.v_field_max.max(st.v_field.norm().to_f64_lossy());
        rep.rotation_max = rep.rotation_max.max(st.rotation_residual.to_f64_lossy());
        rep.points += 1;
    }
    Ok(rep)
}
