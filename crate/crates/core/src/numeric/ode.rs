//! Dormand-Prince 5(4) integration with PI step-size control.
//!
//! Accepted steps are kept; [`Trajectory::eval`] re-integrates from the
//! nearest stored node with one step no longer than the one that was
//! accepted there, so dense output carries the same local accuracy as the
//! stored nodes.

use crate::error::{GeomError, Result};
use crate::scalar::Real;

/// Dormand-Prince tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// Optional guard that flags a state as singular (e.g. a profile radius
/// collapsing to zero). Returns a reason when the state is unusable.
pub type SingularityGuard<'a, T, const N: usize> = &'a dyn Fn(&[T; N]) -> Option<String>;

/// A sampled solution with dense output.
pub struct Trajectory<T, const N: usize, F> {
    rhs: F,
    nodes: Vec<(T, [T; N])>,
}

impl<T: Real, const N: usize, F> std::fmt::Debug for Trajectory<T, N, F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Trajectory").field("nodes", &self.nodes.len()).finish_non_exhaustive()
    }
}

impl<T: Real, const N: usize, F: Fn(T, &[T; N]) -> [T; N]> Trajectory<T, N, F> {
    /// Stored `(s, y)` pairs in increasing `s`.
    pub fn nodes(&self) -> &[(T, [T; N])] {
        &self.nodes
    }

    pub fn span(&self) -> (T, T) {
        (self.nodes[0].0, self.nodes[self.nodes.len() - 1].0)
    }

    pub fn rhs(&self, s: T, y: &[T; N]) -> [T; N] {
        (self.rhs)(s, y)
    }

    /// State at `s`, which must lie inside the integrated span.
    pub fn eval(&self, s: T) -> [T; N] {
        let (lo, hi) = self.span();
        let s = s.max(lo).min(hi);
        let idx = match self.nodes.binary_search_by(|(x, _)| x.partial_cmp(&s).expect("finite abscissa")) {
            Ok(i) => return self.nodes[i].1,
            Err(i) => i.saturating_sub(1),
        };
        let (s0, y0) = self.nodes[idx];
        let h = s - s0;
        if h == T::zero() {
            return y0;
        }
        dp_step(&self.rhs, s0, &y0, h).0
    }
}

/// One Dormand-Prince step: returns the fifth-order solution and the
/// embedded error vector.
fn dp_step<T: Real, const N: usize>(rhs: &impl Fn(T, &[T; N]) -> [T; N], s: T, y: &[T; N], h: T) -> ([T; N], [T; N]) {
    let mut k = [[T::zero(); N]; 7];
    for stage in 0..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(stage) {
            let a = T::lit(A[stage][j]);
            if a != T::zero() {
                for i in 0..N {
                    ys[i] = ys[i] + h * a * kj[i];
                }
            }
        }
        k[stage] = rhs(s + T::lit(C[stage]) * h, &ys);
    }
    let mut y5 = *y;
    let mut err = [T::zero(); N];
    for (stage, ks) in k.iter().enumerate() {
        let b5 = T::lit(B5[stage]);
        let db = T::lit(B5[stage] - B4[stage]);
        for i in 0..N {
            y5[i] = y5[i] + h * b5 * ks[i];
            err[i] = err[i] + h * db * ks[i];
        }
    }
    (y5, err)
}

/// Integrates `y' = rhs(s, y)` from `span.0` to `span.1` (either direction).
///
/// `tol` bounds the local error per step in the mixed norm
/// `|err_i| / (tol (1 + |y_i|))`.
pub fn ode_solve<T, const N: usize, F>(
    rhs: F,
    y0: [T; N],
    span: (T, T),
    tol: T,
    guard: Option<SingularityGuard<'_, T, N>>,
) -> Result<Trajectory<T, N, F>>
where
    T: Real,
    F: Fn(T, &[T; N]) -> [T; N],
{
    let (s0, s1) = span;
    let dir = if s1 >= s0 { T::one() } else { -T::one() };
    let total = (s1 - s0).abs();
    let mut nodes = vec![(s0, y0)];
    if total == T::zero() {
        return Ok(Trajectory { rhs, nodes });
    }
    let mut s = s0;
    let mut y = y0;
    let mut h = (total * T::lit(1e-3)).min(T::lit(1e-2));
    let safety = T::lit(0.9);
    let mut prev_err = T::lit(1e-4);
    let min_step = T::eps() * T::lit(16.0) * (T::one() + s0.abs().max(s1.abs()));
    loop {
        let remaining = (s1 - s) * dir;
        if remaining <= T::zero() {
            break;
        }
        h = h.min(remaining);
        if h < min_step {
            return Err(GeomError::OdeSingularity { at: s.to_f64_lossy(), reason: "step size underflow".into() });
        }
        let (y_new, err) = dp_step(&rhs, s, &y, h * dir);
        let mut en = T::zero();
        for i in 0..N {
            let sc = tol * (T::one() + y[i].abs().max(y_new[i].abs()));
            en = en.max((err[i] / sc).abs());
        }
        if !en.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            h = h * T::lit(0.25);
            continue;
        }
        if en <= T::one() {
            if let Some(g) = guard {
                if let Some(reason) = g(&y_new) {
                    // Shrink the step to localize where the guard first fires.
                    if h > total * T::lit(1e-9) {
                        h = h * T::lit(0.5);
                        continue;
                    }
                    return Err(GeomError::OdeSingularity { at: (s + h * dir).to_f64_lossy(), reason });
                }
            }
            let s_new = if h == remaining { s1 } else { s + h * dir };
            s = s_new;
            y = y_new;
            nodes.push((s, y));
            // PI controller (Gustafsson), exponents for a fifth-order method.
            let en_c = en.max(T::lit(1e-10));
            let factor = safety * en_c.powf(T::lit(-0.7 / 5.0)) * prev_err.powf(T::lit(0.4 / 5.0));
            h = h * factor.max(T::lit(0.2)).min(T::lit(5.0));
            prev_err = en_c;
        } else {
            let factor = safety * en.powf(T::lit(-0.2));
            h = h * factor.max(T::lit(0.1));
        }
    }
    if dir < T::zero() {
        nodes.reverse();
    }
    Ok(Trajectory { rhs, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let tr = ode_solve(|_, y: &[f64; 1]| [y[0]], [1.0], (0.0, 1.0), 1e-12, None).unwrap();
        let e = tr.eval(1.0)[0];
        assert!((e - std::f64::consts::E).abs() < 1e-9, "{e}");
        let mid = tr.eval(0.37)[0];
        assert!((mid - 0.37f64.exp()).abs() < 1e-10);
    }

    #[test]
    fn constant_solution() {
        let tr = ode_solve(|_, _y: &[f64; 2]| [0.0, 0.0], [3.5, -1.0], (0.0, 10.0), 1e-10, None).unwrap();
        assert_eq!(tr.eval(7.3), [3.5, -1.0]);
    }

    #[test]
    fn backward_integration() {
        let tr = ode_solve(|_, y: &[f64; 1]| [y[0]], [1.0], (0.0, -1.0), 1e-12, None).unwrap();
        assert!((tr.eval(-1.0)[0] - (-1f64).exp()).abs() < 1e-10);
        assert!(tr.span().0 < tr.span().1);
    }

    #[test]
    fn guard_reports_location() {
        // y' = -1 reaches zero at s = 1.
        let guard = |y: &[f64; 1]| (y[0] < 1e-3).then(|| "collapsed".to_string());
        let err = ode_solve(|_, _: &[f64; 1]| [-1.0], [1.0], (0.0, 2.0), 1e-10, Some(&guard)).unwrap_err();
        match err {
            GeomError::OdeSingularity { at, reason } => {
                assert!(at > 0.9 && at <= 1.0 + 1e-9, "{at}");
                assert_eq!(reason, "collapsed");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn blowup_underflows() {
        // y' = y^2 blows up at s = 1.
        let err = ode_solve(|_, y: &[f64; 1]| [y[0] * y[0]], [1.0], (0.0, 2.0), 1e-10, None).unwrap_err();
        assert!(matches!(err, GeomError::OdeSingularity { .. }));
    }
}
