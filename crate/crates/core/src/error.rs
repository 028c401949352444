use thiserror::Error;

/// Errors raised by the numerical and geometric layers.
///
/// Values are reported as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("quadrature did not converge: achieved error estimate {achieved:e}, requested {requested:e}")]
    QuadratureFailure { achieved: f64, requested: f64 },

    #[error("ODE singularity at s = {at}: {reason}")]
    OdeSingularity { at: f64, reason: String },

    #[error("immersion degenerates at (u, v) = ({u}, {v})")]
    ImmersionFailure { u: f64, v: f64 },

    #[error("coordinates are not isothermal at (u, v) = ({u}, {v}): |E - G| = {dev_eg:e}, |F| = {dev_f:e}")]
    NotIsothermal { u: f64, v: f64, dev_eg: f64, dev_f: f64 },

    #[error("mean curvature is not constant: max deviation {max_deviation:e} from {reference}")]
    NonConstantMeanCurvature { reference: f64, max_deviation: f64 },

    #[error("cross-section is not transversal at arclength s = {arclength} (|<x_*(J gamma'), V>| = {value:e})")]
    TransversalityFailure { arclength: f64, value: f64 },

    #[error("path passes within {distance:e} of the puncture at ({re}, {im}); clearance {clearance:e}")]
    PunctureClearance { re: f64, im: f64, distance: f64, clearance: f64 },

    #[error("quadrature period {quadrature} disagrees with residue oracle {oracle} by {difference:e}")]
    PeriodMismatch { quadrature: String, oracle: String, difference: f64 },

    #[error("family is not isometric: metric drift {drift:e}")]
    NonIsometricFamily { drift: f64 },

    #[error("invalid tolerances: {0}")]
    InvalidTolerance(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
