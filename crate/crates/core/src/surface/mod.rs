//! Parametric immersions and pointwise differential geometry.
//!
//! Orientation convention: the unit normal is always
//! `(x_u x x_v) / |x_u x x_v|`, and `H` carries whatever sign that induces.

mod frame;
mod hopf;
mod parametric;

pub use frame::{apply_j, frame_at, FrameData, TangentVector};
pub use hopf::{brioschi_curvature, codazzi_residual, hopf_coefficient, isothermal_check};
pub use parametric::{Domain, JetEvaluator, ParametricSurface};
