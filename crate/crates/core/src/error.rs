use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Operands built over different generator sets, or an unknown generator name.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An operation that requires homogeneous input received a mixed-parity one.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric error: {message} (achieved estimate {estimate:e})")]
    Numeric { message: String, estimate: f64 },

    #[error("series truncated at {nmax} modes with tail bound {bound:e}")]
    Truncation { nmax: usize, bound: f64 },

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("convention calibration failed: {0}")]
    Calibration(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
