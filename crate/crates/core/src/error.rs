use thiserror::Error;

/// Everything that can go wrong in the analysis kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("operator is not hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("vector is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("vectors are not orthonormal (max deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(&'static str),

    #[error("dimension {0} is a prime power; finite-field constructions are not supported")]
    PrimePower(usize),

    #[error("dimension {0} is composite; unbiased bases are only built for prime dimensions")]
    Composite(usize),

    #[error("a design needs exactly {expected} bases, got {found}")]
    BasisCount { expected: usize, found: usize },

    #[error("two-value parameter c = {c} is not admissible for n = {n}")]
    InadmissibleParameter { n: usize, c: f64 },

    #[error("invalid transition table: {0}")]
    InvalidTable(&'static str),

    #[error("operation needs basis vectors but the table is synthetic")]
    SyntheticTable,

    #[error("dropped index {index} out of range for dimension {n}")]
    DropIndex { n: usize, index: usize },

    #[error("design is incomplete (Gram matrix is singular)")]
    Singular,

    #[error("inconsistent probabilities: {0}")]
    InconsistentProbabilities(&'static str),

    #[error("invalid experiment: {0}")]
    InvalidExperiment(&'static str),

    #[error("outcome {0} has zero marginal probability")]
    ZeroProbabilityOutcome(usize),

    #[error("index {index} out of range (size {len})")]
    OutOfRange { index: usize, len: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
