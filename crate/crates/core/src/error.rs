use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unit ideal has no components")]
    UnitIdeal,
    #[error("improper intersection: {hypersurface} vanishes on component {component}")]
    Improper { hypersurface: String, component: String },
    #[error("genericity failure at stage j={stage}: {reason} (component {component})")]
    Genericity { stage: usize, component: String, reason: String },
    #[error("non-generic slice: {0}")]
    NonGenericSlice(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 3 for genericity failures, 4 for bad input, 5 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Genericity { .. } | Error::NonGenericSlice(_) => 3,
            Error::Parse(_) | Error::Input(_) | Error::RingMismatch(_) | Error::UnitIdeal => 4,
            _ => 5,
        }
    }
}
