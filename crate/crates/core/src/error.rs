//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric or structural parameter is outside its domain.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// Two paths or lattices that must live on compatible grids do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Not enough usable data to complete a statistical procedure.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The (alpha, alpha_tilde, beta) triple fails the strict admissibility
    /// condition beta > max(1 - alpha/2, 2 - alpha - alpha_tilde).
    #[error(
        "inadmissible parameters: beta = {beta} is not above the threshold {threshold} \
         (margin {margin})"
    )]
    Inadmissible {
        beta: f64,
        threshold: f64,
        margin: f64,
    },

    /// Malformed experiment or sweep configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}
