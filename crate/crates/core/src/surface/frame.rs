use crate::error::{GeomError, Result};
use crate::numeric::{Jet, Mat2, Vec3};
use crate::scalar::Real;

use super::ParametricSurface;

/// Components `(a, b)` of `a d/du + b d/dv`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TangentVector<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> TangentVector<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn du() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn dv() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn to_array(self) -> [T; 2] {
        [self.a, self.b]
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.a * s, self.b * s)
    }
}

impl<T> From<[T; 2]> for TangentVector<T> {
    fn from([a, b]: [T; 2]) -> Self {
        Self { a, b }
    }
}

/// Pointwise geometric state of an immersion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameData<T> {
    pub u: T,
    pub v: T,
    pub jet: Jet<T>,
    /// Oriented unit normal.
    pub normal: Vec3<T>,
    /// `[[E, F], [F, G]]`.
    pub metric: Mat2<T>,
    /// Second fundamental form `[[L, M], [M, N]]`, `L = <xi, x_uu>`.
    pub second_form: Mat2<T>,
    /// Shape operator in the coordinate basis: column `j` holds the
    /// components of `A d_j`.
    pub shape: Mat2<T>,
    pub mean_curvature: T,
    pub gauss_curvature: T,
}

impl<T: Real> FrameData<T> {
    pub fn position(&self) -> Vec3<T> {
        self.jet.x
    }

    /// `x_*(X)`.
    pub fn push(&self, x: TangentVector<T>) -> Vec3<T> {
        self.jet.xu * x.a + self.jet.xv * x.b
    }

    /// `g(X, Y)`.
    pub fn inner(&self, x: TangentVector<T>, y: TangentVector<T>) -> T {
        let gx = self.metric.apply(x.to_array());
        gx[0] * y.a + gx[1] * y.b
    }

    pub fn norm(&self, x: TangentVector<T>) -> T {
        self.inner(x, x).sqrt()
    }

    /// Area density `sqrt(EG - F^2)`.
    pub fn area_density(&self) -> T {
        self.metric.det().sqrt()
    }

    /// `e^{2 rho}` when the coordinates are isothermal (within `tol`
    /// relative to `E`).
    pub fn conformal_factor(&self, tol: T) -> Option<T> {
        let (e, f, g) = (self.metric.m[0][0], self.metric.m[0][1], self.metric.m[1][1]);
        ((e - g).abs() <= tol * e && f.abs() <= tol * e).then_some(e)
    }

    /// Coordinates of a vector in the tangent plane (normal part dropped).
    pub fn pull_back(&self, w: Vec3<T>) -> TangentVector<T> {
        let rhs = [w.dot(self.jet.xu), w.dot(self.jet.xv)];
        let ginv = self.metric.inverse().expect("nondegenerate metric");
        ginv.apply(rhs).into()
    }

    /// `A X` in coordinates.
    pub fn shape_apply(&self, x: TangentVector<T>) -> TangentVector<T> {
        self.shape.apply(x.to_array()).into()
    }

    /// The complex structure in the coordinate basis: column `j` holds
    /// `J d_j`.
    pub fn j_matrix(&self) -> Mat2<T> {
        let ju = apply_j(self, TangentVector::du());
        let jv = apply_j(self, TangentVector::dv());
        Mat2::from_columns(ju.to_array(), jv.to_array())
    }

    /// Oriented orthonormal frame `(e1, e2)` with `e1 = x_u / |x_u|` and
    /// `e2 = xi x e1`, returned as the change of basis whose columns are
    /// the coordinates of `e1`, `e2`.
    pub fn orthonormal_basis(&self) -> Mat2<T> {
        let e1 = TangentVector::du().scale(T::one() / self.norm(TangentVector::du()));
        let e2 = apply_j(self, e1);
        Mat2::from_columns(e1.to_array(), e2.to_array())
    }

    /// Shape operator expressed in the orthonormal frame.
    pub fn shape_orthonormal(&self) -> Mat2<T> {
        let p = self.orthonormal_basis();
        p.inverse().expect("frame basis invertible") * self.shape * p
    }
}

/// Pointwise frame: normal, fundamental forms, shape operator, `H` and `K`.
pub fn frame_at<T: Real>(surface: &ParametricSurface<T>, u: T, v: T) -> Result<FrameData<T>> {
    let jet = surface.jet(u, v)?;
    frame_from_jet(jet, u, v)
}

pub(crate) fn frame_from_jet<T: Real>(jet: Jet<T>, u: T, v: T) -> Result<FrameData<T>> {
    let n = jet.xu.cross(jet.xv);
    let nn = n.norm();
    let fail = || GeomError::ImmersionFailure { u: u.to_f64_lossy(), v: v.to_f64_lossy() };
    if nn.partial_cmp(&(T::lit(1e-12) * jet.xu.norm() * jet.xv.norm())).is_none_or(|o| o.is_lt()) || nn == T::zero() {
        return Err(fail());
    }
    let xi = n / nn;
    let metric = Mat2::new(jet.xu.dot(jet.xu), jet.xu.dot(jet.xv), jet.xu.dot(jet.xv), jet.xv.dot(jet.xv));
    let ginv = metric.inverse().ok_or_else(fail)?;

    // Derivatives of the unit normal, tangential part only.
    let nu = jet.xuu.cross(jet.xv) + jet.xu.cross(jet.xuv);
    let nv = jet.xuv.cross(jet.xv) + jet.xu.cross(jet.xvv);
    let xi_u = (nu - xi * xi.dot(nu)) / nn;
    let xi_v = (nv - xi * xi.dot(nv)) / nn;
    // X xi = -x_*(A X): normal equations for the columns of A.
    let col_u = ginv.apply([-xi_u.dot(jet.xu), -xi_u.dot(jet.xv)]);
    let col_v = ginv.apply([-xi_v.dot(jet.xu), -xi_v.dot(jet.xv)]);
    let shape = Mat2::from_columns(col_u, col_v);

    let second_form = Mat2::new(xi.dot(jet.xuu), xi.dot(jet.xuv), xi.dot(jet.xuv), xi.dot(jet.xvv));
    Ok(FrameData {
        u,
        v,
        jet,
        normal: xi,
        metric,
        second_form,
        shape,
        mean_curvature: shape.trace() / T::lit(2.0),
        gauss_curvature: shape.det(),
    })
}

/// `J X`: the rotation with `x_*(J X) = xi x x_*(X)`.
pub fn apply_j<T: Real>(frame: &FrameData<T>, x: TangentVector<T>) -> TangentVector<T> {
    frame.pull_back(frame.normal.cross(frame.push(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Tolerances;
    use crate::surface::Domain;

    fn sphere_latlong() -> ParametricSurface<f64> {
        // Latitude/longitude: x_u x x_v points outward.
        ParametricSurface::from_position(
            "sphere",
            Domain::rect((0.0, 6.0), (-1.2, 1.2)),
            None,
            |u: f64, v: f64| Vec3::new(v.cos() * u.cos(), v.cos() * u.sin(), v.sin()),
            Tolerances::default(),
        )
    }

    #[test]
    fn unit_sphere_outward_normal() {
        let s = sphere_latlong();
        let f = frame_at(&s, 0.7, 0.3).unwrap();
        assert!((f.normal - f.position()).norm() < 1e-9);
        assert!((f.mean_curvature + 1.0).abs() < 1e-5);
        assert!((f.gauss_curvature - 1.0).abs() < 1e-5);
        let a = f.shape_orthonormal();
        assert!((a - Mat2::identity().scale(-1.0)).max_abs() < 1e-5);
    }

    #[test]
    fn cylinder_inward() {
        // (cos u, -sin u, v): normal points to the axis.
        let s = ParametricSurface::from_position(
            "cyl",
            Domain::rect((0.0, 6.0), (-1.0, 1.0)),
            None,
            |u: f64, v: f64| Vec3::new(u.cos(), -u.sin(), v),
            Tolerances::default(),
        );
        let f = frame_at(&s, 0.0, 0.0).unwrap();
        assert!((f.normal - Vec3::new(-1.0, 0.0, 0.0)).norm() < 1e-9);
        assert!((f.mean_curvature - 0.5).abs() < 1e-5);
        assert!(f.gauss_curvature.abs() < 1e-5);
    }

    #[test]
    fn degenerate_point_is_rejected() {
        let s = ParametricSurface::from_position(
            "cone",
            Domain::rect((-1.0, 1.0), (-1.0, 1.0)),
            None,
            |u: f64, v: f64| Vec3::new(u, u * v, 0.0),
            Tolerances::default(),
        );
        // x_v = (0, u, 0) vanishes on u = 0.
        assert!(matches!(frame_at(&s, 0.0, 0.5), Err(GeomError::ImmersionFailure { .. })));
    }

    #[test]
    fn j_squares_to_minus_one_and_preserves_length() {
        let s = sphere_latlong();
        let f = frame_at(&s, 1.1, -0.4).unwrap();
        let x = TangentVector::new(0.3, -1.7);
        let jx = apply_j(&f, x);
        let jjx = apply_j(&f, jx);
        assert!((jjx.a + x.a).abs() < 1e-10 && (jjx.b + x.b).abs() < 1e-10);
        assert!((f.norm(jx) - f.norm(x)).abs() < 1e-10);
        assert!(f.inner(x, jx).abs() < 1e-10);
    }
}
