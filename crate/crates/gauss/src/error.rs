use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaussError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("space dimension {0} exceeds the supported maximum of 4")]
    DimensionTooLarge(usize),

    #[error("quadratic form is not symmetric")]
    NotSymmetric,

    #[error("measure is degenerate")]
    Degenerate,

    #[error("measure is not normalized")]
    NotNormalized,

    #[error("map M is not invertible")]
    SingularMap,

    #[error("epsilon schedule needs at least two distinct positive values")]
    BadSchedule,

    #[error("quadrature grid of {0} nodes exceeds the node budget")]
    TooManyNodes(u64),
}

pub type Result<T> = std::result::Result<T, GaussError>;
