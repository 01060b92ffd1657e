use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix has no rows")]
    EmptyMatrix,

    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:.3e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix power exponent {0} outside [0, 1]")]
    ExponentRange(f64),

    #[error("trace is {0:.6}, expected 1")]
    Trace(f64),

    #[error("Bloch vector outside unit ball (norm {0:.6})")]
    BlochOutsideBall(f64),

    #[error("channel parameter q = {0} outside [0, 1)")]
    ProbabilityRange(f64),

    #[error("Pauli axis {0} is not one of 1, 2, 3")]
    PauliAxis(usize),

    #[error("channel has no Kraus operators")]
    EmptyChannel,

    #[error("Kraus completeness violated: max |sum E†E - I| = {deviation:.2e}")]
    Completeness { deviation: f64 },

    #[error("operator is not unitary (max |U†U - I| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid skew parameters (alpha={alpha}, beta={beta}, gamma={gamma}): {reason}")]
    InvalidParams {
        alpha: f64,
        beta: f64,
        gamma: f64,
        reason: &'static str,
    },

    #[error("{bound} requires {requirement}, got N = {got}")]
    TooFewOperands {
        bound: &'static str,
        requirement: &'static str,
        got: usize,
    },

    #[error(
        "permutation search needs {count} tuples, above the cap of {cap}; raise the cap to run it"
    )]
    EnumerationCap { count: String, cap: u64 },

    #[error("invalid sweep configuration: {0}")]
    Sweep(String),

    #[error("soundness check failed at {context}: {details}")]
    Soundness { context: String, details: String },

    #[error("{path}: {message}")]
    Format { path: String, message: String },

    #[error("JSON syntax error: {0}")]
    Json(#[from] serde_json::Error),
}
