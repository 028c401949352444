//! Minimal surfaces from rational Weierstrass data `(g, dh)`:
//! `x = Re int Phi` with `Phi = ((1/g - g) dh/2, i (1/g + g) dh/2, dh)`.
//!
//! Periods are computed twice, by quadrature and by exact residues over
//! the Gaussian rationals, and the two must agree.

mod data;
mod immersion;
mod period;
mod poly;
mod rational;

pub use data::{
    assemble_phi, sample_points, BranchPoint, CycleSpec, RationalSpec, WPhi, WeierstrassData, WeierstrassSpec,
};
pub use immersion::{
    associate_immersion, associate_minimal, build_immersion, conjugate_immersion, local_immersion, reconstruct_family,
    Chart, ChartSetup,
};
pub use period::{
    deformable, period, well_defined, PeriodEngine, PeriodSummary, PeriodVerdict, WeierstrassPeriod,
    PERIOD_MISMATCH_TOL, PERIOD_ZERO_TOL,
};
pub use poly::{field_int, Poly};
pub use rational::{FactoredRational, RationalFn};
