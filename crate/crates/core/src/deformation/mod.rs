//! Isometric deformations: the associate tensor, one-parameter families,
//! extraction of `(k, Z)` and residuals of the deformation equations.

mod family;
mod state;
mod tensor;

pub use family::{
    rotation_columns, CylinderUnrollingFamily, FamilyStencil, IsometricFamily, MinimalAssociateFamily,
    RigidMotionFamily, StencilSample, WeierstrassFamily,
};
pub use state::{
    deformation_state, integrability_residuals, state_from_sample, DeformationState, IntegrabilityReport,
    METRIC_DRIFT_TOL,
};
pub use tensor::{associate_tensor, gauss_codazzi_invariants, TensorInvariants};
