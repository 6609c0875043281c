use thiserror::Error;

/// Errors produced by state construction, linear algebra, and the measure
/// optimizers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (max entrywise deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("not a density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("nothing kept")]
    NothingKept,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("oracle scope: measured side must be a single qubit")]
    OracleScope,

    #[error("degenerate spectral parameters")]
    DegenerateSpectralParameters,

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
