use thiserror::Error;

/// Errors raised by the synthesis, propagation and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("frame is not orthonormal (max Gram deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("singular frame configuration: chi = {chi:e} rad is below the guard {guard:e} rad")]
    SingularFrame { chi: f64, guard: f64 },

    #[error("invalid path laws: {0}")]
    InvalidLaws(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("trace drift {drift:e} exceeds {limit:e}; reduce the step size")]
    TraceDrift { drift: f64, limit: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

pub type Result<V, E = Error> = std::result::Result<V, E>;
