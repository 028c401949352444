use crate::error::{GeomError, Result};
use crate::scalar::Real;

/// Numerical tolerances threaded through quadrature, ODE integration and
/// finite differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Absolute quadrature tolerance.
    pub quad_abs: T,
    /// Relative quadrature tolerance.
    pub quad_rel: T,
    /// Maximum number of panel doublings before giving up.
    pub quad_max_level: u32,
    /// Local error bound per accepted ODE step (mixed absolute/relative).
    pub ode_tol: T,
    /// Relative step for first-order central differences.
    pub fd_step: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        // Tighter than the type can resolve is pointless; clamp to a few
        // hundred ulps for f32.
        let floor = T::eps() * T::lit(256.0);
        Self {
            quad_abs: T::lit(1e-10).max(floor),
            quad_rel: T::lit(1e-10).max(floor),
            quad_max_level: 14,
            ode_tol: T::lit(1e-12).max(floor),
            fd_step: T::lit(1e-5).max(T::eps().cbrt()),
        }
    }
}

impl<T: Real> Tolerances<T> {
    pub fn validated(self) -> Result<Self> {
        let check = |name: &str, v: T| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(GeomError::InvalidTolerance(format!("{name} must be strictly positive, got {v}")))
            }
        };
        check("quad_abs", self.quad_abs)?;
        check("quad_rel", self.quad_rel)?;
        check("ode_tol", self.ode_tol)?;
        check("fd_step", self.fd_step)?;
        if self.quad_max_level == 0 {
            return Err(GeomError::InvalidTolerance("quad_max_level must be at least 1".into()));
        }
        Ok(self)
    }

    pub fn with_quad(mut self, tol: T) -> Self {
        self.quad_abs = tol;
        self.quad_rel = tol;
        self
    }

    pub fn with_ode(mut self, tol: T) -> Self {
        self.ode_tol = tol;
        self
    }

    pub fn with_fd_step(mut self, step: T) -> Self {
        self.fd_step = step;
        self
    }

    /// Acceptance threshold for a quadrature result of magnitude `value`.
    pub fn quad_target(&self, value: T) -> T {
        self.quad_abs.max(self.quad_rel * value)
    }

    /// Step used for second-order central differences; larger than
    /// `fd_step` so the `eps/h^2` roundoff stays below the `h^2` truncation.
    pub fn fd_step2(&self) -> T {
        self.fd_step * T::lit(100.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let t = Tolerances::<f64>::default().validated().unwrap();
        assert_eq!(t.quad_abs, 1e-10);
        assert_eq!(t.fd_step, 1e-5);
        Tolerances::<f32>::default().validated().unwrap();
    }

    #[test]
    fn rejects_non_positive() {
        let t = Tolerances::<f64>::default().with_quad(0.0);
        assert!(matches!(t.validated(), Err(GeomError::InvalidTolerance(_))));
        let t = Tolerances::<f64>::default().with_fd_step(f64::NAN);
        assert!(t.validated().is_err());
    }
}
