use thiserror::Error;

/// Errors shared by the numerical kernels and the model layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {pivot:.3e} at row {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("overlap matrix is numerically degenerate")]
    DegenerateOverlap,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("quadrature order {order} exceeds supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("integral failed the order-doubling stability check (last change {change:.3e})")]
    NotConverged { change: f64 },
    #[error("state index {index} out of range (retained {retained})")]
    IndexOutOfRange { index: usize, retained: usize },
    #[error("time-dependent overlap matrix is singular at t = {time}")]
    SingularOverlap { time: f64 },
    #[error("unknown reference method `{0}`")]
    UnknownMethod(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("root bracketing failed: {0}")]
    RootBracketFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
