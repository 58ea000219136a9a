use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected integer entries, got {0}")]
    NonInteger(String),

    #[error("zero generator at position {0}")]
    ZeroGenerator(usize),

    #[error("invalid weight system: {0}")]
    InvalidWeights(String),

    #[error("inconsistent cone data: {0}")]
    InconsistentConeData(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid support pattern: {0}")]
    InvalidSupport(String),

    #[error("matrix is not special unitary (residual {0:e})")]
    NotSpecialUnitary(f64),

    #[error("projection did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("point collapsed toward z = 0 or w = 0")]
    Collapse,

    #[error("differential does not square to zero")]
    DifferentialNotNilpotent,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// `2` for malformed input or usage, `1` for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonInteger(_)
            | Error::InvalidWeights(_)
            | Error::InconsistentConeData(_)
            | Error::Parse(_)
            | Error::Config(_)
            | Error::Json(_)
            | Error::Io(_) => 2,
            _ => 1,
        }
    }
}
