use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("operator is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("unit-norm invariant violated: state norm is {norm}")]
    NotUnitNorm { norm: f64 },

    #[error("not a projector: {0}")]
    NotProjector(String),

    #[error("not a density operator: {0}")]
    NotDensity(String),

    #[error("invalid effect: {0}")]
    InvalidEffect(String),

    #[error("vectors span rank {rank}, expected {expected}")]
    DegenerateSpan { rank: usize, expected: usize },

    #[error("duplicate value {0} in decision variable")]
    DuplicateValues(f64),

    #[error("eigenbasis is not orthonormal (deviation {deviation:.3e})")]
    NonOrthonormalBasis { deviation: f64 },

    #[error("operator is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("conditioning on outcome with probability {probability:.3e}")]
    ZeroProbabilityOutcome { probability: f64 },

    #[error("value {0} is not an outcome of the variable")]
    UnknownValue(f64),

    #[error("unknown data label {0:?}")]
    UnknownDataLabel(String),

    #[error("invalid likelihood table: {0}")]
    InvalidLikelihood(String),

    #[error("effects span dimension {rank} of the {expected}-dimensional Hermitian space")]
    InsufficientSpan { rank: usize, expected: usize },

    #[error("samples inconsistent: residual {residual:.3e} exceeds noise bound {bound:.3e}")]
    InconsistentSamples { residual: f64, bound: f64 },

    #[error("eigenprojectors do not resolve the identity (deviation {deviation:.3e})")]
    NotAPartition { deviation: f64 },

    #[error("no sample satisfied the conditioning event")]
    DegenerateConditioning,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
