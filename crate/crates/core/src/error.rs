use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid generator index {0}; expected 12 or 23")]
    InvalidGenerator(u32),

    #[error("unsupported braid configuration: {n_anyons} anyons, position {position}")]
    UnsupportedConfiguration { n_anyons: usize, position: usize },

    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("non-physical noise parameter: {0}")]
    NonPhysicalNoise(String),

    #[error("channel failed the linearity check (residual {residual:.3e})")]
    NonLinearChannel { residual: f64 },

    #[error("cannot parse braid word: {0}")]
    WordParse(String),

    #[error("invalid benchmark setup: {0}")]
    InvalidSetup(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("zero-norm logical block")]
    ZeroBlock,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
