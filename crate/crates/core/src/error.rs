use thiserror::Error;

/// Errors produced by the numerical routines and the sweep harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (‖A − A†‖_F = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("invalid Hamiltonian: {0}")]
    InvalidHamiltonian(String),

    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("state is not pure (largest eigenvalue {largest})")]
    NotPure { largest: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("ancilla dimension {0} is not supported by the optimizer (qubit ancilla only)")]
    UnsupportedAncillaDim(usize),

    #[error("measured party dimension {0} is not supported (qubit only)")]
    UnsupportedDim(usize),

    #[error("optimizer failed: {0}")]
    OptimizerFailed(String),

    #[error("nothing to write: record list is empty")]
    EmptyOutput,

    #[error("state {index} (seed {seed:#018x}) failed: {source}")]
    StateFailed {
        index: u64,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
