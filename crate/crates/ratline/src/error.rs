use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] ratline_core::Error),
    #[error("unknown function `{0}` (expected one of gaussian, lorentzian, rational, appendixA, r1)")]
    UnknownFunction(String),
    #[error("cannot parse range `{input}`: {reason}")]
    BadRange { input: String, reason: String },
    #[error("{0}")]
    Invalid(String),
    #[error("oracle did not converge at {what} (error estimate {abs_error:e})")]
    OracleNonConvergence { what: String, abs_error: f64 },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
