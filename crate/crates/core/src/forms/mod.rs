//! Force and torque one-forms, their periods over cycles, closedness
//! checks and the planar cross-section criteria.

mod closedness;
mod cycle;
mod exactness;
mod oneform;
mod planar;

pub use closedness::{closedness_defect, fit_decay_order};
pub use cycle::{Cycle, CycleShape};
pub use exactness::{exactness_residuals, ExactnessReport};
pub use oneform::{
    conormal_form, constant_mean_curvature, force_form, period_report, torque_form, FormKind, PeriodMethod,
    PeriodReport, VectorOneForm, CONSTANT_H_TOL,
};
pub use planar::{
    alexandrov_criterion, cross_section_force, smallest_enclosing_circle, smallest_enclosing_circle_brute,
    AlexandrovReport, Circle2, CrossSection, PLANARITY_TOL, TRANSVERSALITY_TOL,
};
