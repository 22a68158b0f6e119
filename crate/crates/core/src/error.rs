use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix size {size} does not factor as {d1}x{d2}")]
    SizeMismatch { size: usize, d1: usize, d2: usize },

    #[error("dimension must be at least {min} (got {got})")]
    DimensionTooSmall { min: usize, got: usize },

    #[error("entry data has {got} values, expected {expected}")]
    EntryCountMismatch { expected: usize, got: usize },

    #[error("not Hermitian (max |a - a\u{2020}| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is not 1 (got {trace})")]
    TraceNotOne { trace: f64 },

    #[error("vector is not unit norm (got {norm})")]
    NotUnitNorm { norm: f64 },

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error(
        "reference state not faithful (min eigenvalue {min_eigenvalue:e} below floor {floor:e})"
    )]
    NotFaithful { min_eigenvalue: f64, floor: f64 },

    #[error("inverse temperature must be nonnegative (got {beta})")]
    NegativeBeta { beta: f64 },

    #[error("decomposition weight must be positive (term {index} has {weight})")]
    NonPositiveWeight { index: usize, weight: f64 },

    #[error("decomposition term {index} is zero")]
    ZeroTerm { index: usize },

    #[error("decomposition term {index} does not have unit norm (got {norm})")]
    NonUnitTerm { index: usize, norm: f64 },

    #[error("decomposition weights sum to {weight_sum}, expected 1")]
    UnnormalizedDecomposition { weight_sum: f64 },

    #[error("decomposition must request at least one term")]
    NoTermsRequested,

    #[error("probabilities must be a simplex: {reason}")]
    InvalidSimplex { reason: String },

    #[error("input state is not certified separable (verdict margin {margin:e})")]
    InputNotSeparable { margin: f64 },

    #[error("pairing {value:e} of term {index} is not strictly positive")]
    PairingNotPositive { index: usize, value: f64 },

    #[error("replication claim `{claim}` violated (value {value:e})")]
    ReplicationFailure { claim: String, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
