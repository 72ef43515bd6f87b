use thiserror::Error;

/// Errors for state construction, geometry fits and iterative solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}, need d >= 2")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0:.12})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("parameter {name} = {value} outside valid range {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("point set is rank-deficient: affine span misses direction {null_direction:?}")]
    DegeneratePoints { null_direction: Vec<f64> },

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("query point is not strictly exterior; no separating hyperplane exists")]
    InteriorPoint,

    #[error("unsupported subsystem dimensions {0}x{1} for this operation")]
    UnsupportedDims(usize, usize),

    #[error("input state is not pure (largest eigenvalue {0:.12})")]
    NotPure(f64),

    #[error("Kraus operators do not resolve the identity (max deviation {0:.3e})")]
    IncompleteKraus(f64),

    #[error("probability vector violates the simplex (entry sum {0:.12})")]
    NotSimplex(f64),

    #[error("ensemble weights and states have different lengths ({0} vs {1})")]
    EnsembleLengthMismatch(usize, usize),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed file: {0}")]
    MalformedFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
