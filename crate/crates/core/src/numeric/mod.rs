//! Shared numerical primitives.

pub mod fd;
pub mod mat2;
pub mod ode;
pub mod path;
pub mod quadrature;
pub mod tolerances;
pub mod vec3;

pub use fd::{fd_jet, Jet};
pub use mat2::Mat2;
pub use ode::{ode_solve, Trajectory};
pub use path::{integrate_path, integrate_path_with, Complex3, ComplexPath};
pub use quadrature::{integrate, integrate_fallible, integrate_real_1form, GaussLegendre, Integrand, Quadrature};
pub use tolerances::Tolerances;
pub use vec3::Vec3;
