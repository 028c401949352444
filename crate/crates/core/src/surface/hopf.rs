use num_complex::Complex;

use crate::error::{GeomError, Result};
use crate::numeric::fd::point_scale;
use crate::numeric::Mat2;
use crate::scalar::Real;

use super::{frame_at, FrameData, ParametricSurface};

/// Relative tolerance for `E = G`, `F = 0`.
const ISOTHERMAL_TOL: f64 = 1e-8;

/// Returns `e^{2 rho}` or a precondition error naming the deviation.
pub fn isothermal_check<T: Real>(frame: &FrameData<T>) -> Result<T> {
    frame.conformal_factor(T::lit(ISOTHERMAL_TOL)).ok_or_else(|| {
        let m = frame.metric.m;
        GeomError::NotIsothermal {
            u: frame.u.to_f64_lossy(),
            v: frame.v.to_f64_lossy(),
            dev_eg: (m[0][0] - m[1][1]).abs().to_f64_lossy(),
            dev_f: m[0][1].abs().to_f64_lossy(),
        }
    })
}

/// `<A d_w, d_w>` with `d_w = (d_u - i d_v) / 2`, extended complex-bilinearly.
///
/// In isothermal coordinates this is `(e^{2 rho} / 2)(alpha - i beta)`
/// where the shape operator reads `[[H + alpha, beta], [beta, H - alpha]]`.
pub fn hopf_coefficient<T: Real>(surface: &ParametricSurface<T>, u: T, v: T) -> Result<Complex<T>> {
    let frame = frame_at(surface, u, v)?;
    isothermal_check(&frame)?;
    Ok(hopf_from_frame(&frame))
}

pub(crate) fn hopf_from_frame<T: Real>(frame: &FrameData<T>) -> Complex<T> {
    let ii = frame.second_form.m;
    let quarter = T::lit(0.25);
    Complex::new((ii[0][0] - ii[1][1]) * quarter, -ii[0][1] * T::lit(2.0) * quarter)
}

/// `d_wbar(omega) - (1/2) e^{2 rho} H_w` by fourth-order central differences.
///
/// Vanishes (up to truncation) exactly when the mean curvature is constant.
pub fn codazzi_residual<T: Real>(surface: &ParametricSurface<T>, u: T, v: T) -> Result<Complex<T>> {
    let frame = frame_at(surface, u, v)?;
    let conformal = isothermal_check(&frame)?;
    let h = T::lit(1e-3) * point_scale(u, v);

    let sample = |du: T, dv: T| -> Result<(Complex<T>, T)> {
        let f = frame_at(surface, u + du, v + dv)?;
        Ok((hopf_from_frame(&f), f.mean_curvature))
    };
    let mut cache = Vec::new();
    for k in [-2.0, -1.0, 1.0, 2.0] {
        let k = T::lit(k) * h;
        cache.push((sample(k, T::zero())?, sample(T::zero(), k)?));
    }
    let c = T::one() / (T::lit(12.0) * h);
    let diff = |f: &dyn Fn(usize) -> Complex<T>| -> Complex<T> {
        let eight: Complex<T> = Complex::new(T::lit(8.0), T::zero());
        (f(0) - f(3) + (f(2) - f(1)) * eight) * Complex::new(c, T::zero())
    };
    let omega_u = diff(&|i| cache[i].0 .0);
    let omega_v = diff(&|i| cache[i].1 .0);
    let h_u = diff(&|i| Complex::new(cache[i].0 .1, T::zero())).re;
    let h_v = diff(&|i| Complex::new(cache[i].1 .1, T::zero())).re;

    let half = T::lit(0.5);
    let d_wbar = (omega_u + Complex::<T>::i() * omega_v) * half;
    let h_w = Complex::new(h_u, -h_v) * half;
    Ok(d_wbar - h_w * (conformal * half))
}

/// Gauss curvature from the metric alone (Brioschi formula), with all
/// metric derivatives taken by fourth-order central differences.
pub fn brioschi_curvature<T: Real>(surface: &ParametricSurface<T>, u: T, v: T) -> Result<T> {
    let h = T::lit(2e-3).max(T::eps().powf(T::lit(1.0 / 6.0))) * point_scale(u, v);
    let metric = |a: T, b: T| -> Result<[T; 3]> {
        let j = surface.jet(a, b)?;
        Ok([j.xu.dot(j.xu), j.xu.dot(j.xv), j.xv.dot(j.xv)])
    };
    // Pre-evaluate on the 5x5 stencil.
    let mut grid = [[[T::zero(); 3]; 5]; 5];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let du = T::lit(i as f64 - 2.0) * h;
            let dv = T::lit(j as f64 - 2.0) * h;
            let needed = i == 2 || j == 2 || (i != 2 && j != 2);
            if needed {
                *cell = metric(u + du, v + dv)?;
            }
        }
    }
    let at = |i: i32, j: i32, c: usize| grid[(i + 2) as usize][(j + 2) as usize][c];
    let w1 = [T::lit(1.0 / 12.0), T::lit(-8.0 / 12.0), T::zero(), T::lit(8.0 / 12.0), T::lit(-1.0 / 12.0)];
    let w2 = [T::lit(-1.0 / 12.0), T::lit(16.0 / 12.0), T::lit(-30.0 / 12.0), T::lit(16.0 / 12.0), T::lit(-1.0 / 12.0)];
    let d_u = |c: usize| (0..5).fold(T::zero(), |s, k| s + w1[k] * at(k as i32 - 2, 0, c)) / h;
    let d_v = |c: usize| (0..5).fold(T::zero(), |s, k| s + w1[k] * at(0, k as i32 - 2, c)) / h;
    let d_uu = |c: usize| (0..5).fold(T::zero(), |s, k| s + w2[k] * at(k as i32 - 2, 0, c)) / (h * h);
    let d_vv = |c: usize| (0..5).fold(T::zero(), |s, k| s + w2[k] * at(0, k as i32 - 2, c)) / (h * h);
    let d_uv = |c: usize| {
        let mut s = T::zero();
        for a in 0..5 {
            for b in 0..5 {
                if a != 2 && b != 2 {
                    s = s + w1[a] * w1[b] * at(a as i32 - 2, b as i32 - 2, c);
                }
            }
        }
        s / (h * h)
    };
    let [e, f, g] = grid[2][2];
    let half = T::lit(0.5);
    let (e_u, e_v, f_u, f_v, g_u, g_v) = (d_u(0), d_v(0), d_u(1), d_v(1), d_u(2), d_v(2));
    let (e_vv, f_uv, g_uu) = (d_vv(0), d_uv(1), d_uu(2));

    let det3 = |m: [[T; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let first = det3([
        [-half * e_vv + f_uv - half * g_uu, half * e_u, f_u - half * e_v],
        [f_v - half * g_u, e, f],
        [half * g_v, f, g],
    ]);
    let second = det3([[T::zero(), half * e_v, half * g_u], [half * e_v, e, f], [half * g_u, f, g]]);
    let denom = Mat2::new(e, f, f, g).det();
    Ok((first - second) / (denom * denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Jet, Vec3};
    use crate::surface::Domain;

    fn catenoid() -> ParametricSurface<f64> {
        ParametricSurface::new(
            "catenoid",
            Domain::rect((0.0, std::f64::consts::TAU), (-1.0, 1.0)).periodic_in_u(),
            Some(0.0),
            |u: f64, v: f64| {
                let (s, c) = u.sin_cos();
                let (ch, sh) = (v.cosh(), v.sinh());
                Ok(Jet {
                    x: Vec3::new(ch * c, ch * s, v),
                    xu: Vec3::new(-ch * s, ch * c, 0.0),
                    xv: Vec3::new(sh * c, sh * s, 1.0),
                    xuu: Vec3::new(-ch * c, -ch * s, 0.0),
                    xuv: Vec3::new(-sh * s, sh * c, 0.0),
                    xvv: Vec3::new(ch * c, ch * s, 0.0),
                })
            },
        )
    }

    #[test]
    fn catenoid_hopf_has_modulus_one_half() {
        let s = catenoid();
        for &(u, v) in &[(0.0, 0.0), (1.0, 0.5), (2.5, -0.8)] {
            let w = hopf_coefficient(&s, u, v).unwrap();
            assert!((w.norm() - 0.5).abs() < 1e-12, "{w}");
            let f = frame_at(&s, u, v).unwrap();
            let e2 = f.metric.m[0][0];
            let rhs = e2 * e2 / 4.0 * (f.mean_curvature.powi(2) - f.gauss_curvature);
            assert!((w.norm_sqr() - rhs).abs() < 1e-8);
        }
    }

    #[test]
    fn catenoid_codazzi_and_brioschi() {
        let s = catenoid();
        let r = codazzi_residual(&s, 0.4, 0.3).unwrap();
        assert!(r.norm() < 1e-6, "{r}");
        for &(u, v) in &[(0.0, 0.0), (0.7, 0.6)] {
            let k = brioschi_curvature(&s, u, v).unwrap();
            let exact = -1.0 / v.cosh().powi(4);
            assert!((k - exact).abs() < 1e-7, "{k} vs {exact}");
        }
    }

    #[test]
    fn non_isothermal_is_rejected() {
        let s = ParametricSurface::new("graph", Domain::rect((-1.0, 1.0), (-1.0, 1.0)), None, |u: f64, v: f64| {
            Ok(Jet {
                x: Vec3::new(u, v, u * u + v * v),
                xu: Vec3::new(1.0, 0.0, 2.0 * u),
                xv: Vec3::new(0.0, 1.0, 2.0 * v),
                xuu: Vec3::new(0.0, 0.0, 2.0),
                xuv: Vec3::zero(),
                xvv: Vec3::new(0.0, 0.0, 2.0),
            })
        });
        assert!(matches!(hopf_coefficient(&s, 0.5, 0.0), Err(GeomError::NotIsothermal { .. })));
        // Brioschi needs only the metric: K = 4 / (1 + 4u^2 + 4v^2)^2.
        let k = brioschi_curvature(&s, 0.5, 0.0).unwrap();
        assert!((k - 4.0 / 4.0).abs() < 1e-7, "{k}");
        let f = frame_at(&s, 0.5, 0.0).unwrap();
        assert!((f.gauss_curvature - k).abs() < 1e-7);
    }
}
