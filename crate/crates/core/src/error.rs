use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QcorrError {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue = {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("state is not X-shaped (max non-X entry = {deviation:e})")]
    NotXState { deviation: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("evaluation failed at {point}: {source}")]
    AtPoint {
        point: String,
        #[source]
        source: Box<QcorrError>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl QcorrError {
    /// True for errors caused by bad user input rather than numerics.
    pub fn is_validation(&self) -> bool {
        match self {
            QcorrError::InvalidParams(_) | QcorrError::InvalidSweep(_) | QcorrError::Io(_) => true,
            QcorrError::AtPoint { source, .. } => source.is_validation(),
            _ => false,
        }
    }
}

impl From<std::io::Error> for QcorrError {
    fn from(e: std::io::Error) -> Self {
        QcorrError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, QcorrError>;
