use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported matrix dimension {0} (only 2 and 4 are supported)")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian (max |m - m^†| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("density matrix has negative eigenvalue {value:e}")]
    NegativeEigenvalue { value: f64 },

    #[error("density matrix trace {trace} is not 1")]
    InvalidTrace { trace: f64 },

    #[error("unknown subsystem `{0}` (expected A or B)")]
    UnknownSubsystem(String),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("concurrence {0} outside [0, 1]")]
    ConcurrenceDomain(f64),

    #[error("discord {0:e} is negative beyond optimizer tolerance")]
    NegativeDiscord(f64),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("evaluation failed at {point}: {source}")]
    Evaluation { point: String, source: Box<Error> },

    #[error("series has {found} points, need at least {needed}")]
    TooFewPoints { needed: usize, found: usize },

    #[error("signature not found: {0}")]
    SignatureNotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
