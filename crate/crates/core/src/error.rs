use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum ToaError {
    #[error("{function}: argument {value} is outside the domain ({domain})")]
    Domain {
        function: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("config parse error: {0}")]
    ConfigParse(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = ToaError> = std::result::Result<T, E>;

pub(crate) fn domain(function: &'static str, value: f64, domain: &'static str) -> ToaError {
    ToaError::Domain {
        function,
        value,
        domain,
    }
}
