use thiserror::Error;

#[derive(Debug, Error)]
pub enum MixError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("numeric failure: {0}")]
    Numeric(#[from] ntr_core::Error),
    #[error("numeric failure: density at y = {y} is {value}")]
    BadDensity { y: f64, value: f64 },
    #[error("cannot write output: {0}")]
    Output(#[source] std::io::Error),
}

impl MixError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            MixError::Config(_) => 2,
            MixError::Data(_) => 3,
            MixError::Numeric(_) | MixError::BadDensity { .. } => 4,
            MixError::Output(_) => 1,
        }
    }
}

pub type Result<T, E = MixError> = std::result::Result<T, E>;
