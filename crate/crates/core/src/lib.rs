//! Force and torque periods of constant mean curvature surfaces,
//! associate families, Weierstrass minimal surfaces and the
//! finite-or-circle deformability test.
//!
//! Everything numeric is generic over the scalar type (see
//! [`scalar::Real`]); the aliases below fix it to `f64`.

pub mod catalog;
pub mod deformation;
pub mod error;
pub mod forms;
pub mod numeric;
pub mod scalar;
pub mod surface;
pub mod verdict;
pub mod weierstrass;

pub use error::{GeomError, Result};

pub type Vec3 = numeric::Vec3<f64>;
pub type Mat2 = numeric::Mat2<f64>;
pub type Jet = numeric::Jet<f64>;
pub type Tolerances = numeric::Tolerances<f64>;
pub type Surface = surface::ParametricSurface<f64>;
pub type Domain = surface::Domain<f64>;
pub type Frame = surface::FrameData<f64>;
pub type Cycle = forms::Cycle<f64>;
pub type OneForm = forms::VectorOneForm<f64>;
pub type WeierstrassData = weierstrass::WeierstrassData<f64>;
pub type CatalogEntry = catalog::CatalogEntry<f64>;
