use crate::linalg::ComplexMatrix;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The operation needs an asymptotically stable matrix.
    #[error("spectrum condition violated: {0}")]
    Spectrum(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("tableau is not explicit: {0}")]
    NotExplicit(String),

    #[error("inconsistent scheme: {0}")]
    InconsistentScheme(String),

    /// The staircase reduction left an uncoupled block; `residual` is its
    /// (skew-Hermitian) restriction.
    #[error("matrix is not asymptotically stable: uncoupled block of size {}", residual.dim())]
    NotAsymptoticallyStable { residual: ComplexMatrix },

    #[error("no witness vector at level {level}: {reason}")]
    WitnessNotFound { level: usize, reason: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
