use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("sequence has no taps")]
    EmptySequence,

    #[error("sequence has a non-finite tap at index {0}")]
    NonFiniteTap(usize),

    #[error("sequence has zero norm")]
    ZeroNorm,

    #[error("vector is not unit norm (|x|^2 = {0})")]
    NotUnitNorm(f64),

    #[error("single nonzero tap: time spread is 0 and periodic frequency spread is infinite")]
    SingleTap,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "taps too few for this frequency spread: alpha = {alpha} must be below \
         lambda_max(B) = {lambda_max_b} for {taps} taps"
    )]
    Unattainable {
        alpha: f64,
        lambda_max_b: f64,
        taps: usize,
    },

    #[error("inverse iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("unknown window: {0}")]
    UnknownWindow(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
