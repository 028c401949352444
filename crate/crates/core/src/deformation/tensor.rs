//! The associate shape operator `A_t` and its algebraic invariants.

use serde::Serialize;

use crate::numeric::Mat2;
use crate::scalar::Real;

/// `cos t (A - H I) + sin t J (A - H I) + H I` in an oriented orthonormal
/// frame, where `J` is the rotation `[[0, -1], [1, 0]]`.
pub fn associate_tensor<T: Real>(a: &Mat2<T>, h: T, t: T) -> Mat2<T> {
    let traceless = *a - Mat2::identity().scale(h);
    traceless.scale(t.cos()) + (Mat2::rot90() * traceless).scale(t.sin()) + Mat2::identity().scale(h)
}

/// Largest deviations over a set of angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TensorInvariants {
    /// `max |tr A_t - 2H|`.
    pub trace: f64,
    /// `max |det A_t - det A|`.
    pub det: f64,
    /// `max` asymmetry of `A_t`.
    pub asymmetry: f64,
}

pub fn gauss_codazzi_invariants<T: Real>(a: &Mat2<T>, h: T, ts: &[T]) -> TensorInvariants {
    let det0 = a.det();
    let mut out = TensorInvariants { trace: 0.0, det: 0.0, asymmetry: 0.0 };
    for &t in ts {
        let at = associate_tensor(a, h, t);
        out.trace = out.trace.max((at.trace() - h * T::lit(2.0)).abs().to_f64_lossy());
        out.det = out.det.max((at.det() - det0).abs().to_f64_lossy());
        out.asymmetry = out.asymmetry.max(at.asymmetry().to_f64_lossy());
    }
    out
}
