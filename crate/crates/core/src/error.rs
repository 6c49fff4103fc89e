use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Möbius parameter beta must be positive and finite, got {0}")]
    InvalidBeta(f64),
    #[error("evaluation at a pole of R_{index}")]
    Pole { index: i64 },
    #[error("expected {expected} samples, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("kernel derivative order must be 0 or 1, got {0}")]
    InvalidOrder(u32),
    #[error("binomial coefficient ({m} choose {r}) overflows u64")]
    BinomialOverflow { m: u64, r: i64 },
    #[error("terminating 1F1 needs a <= 0, got a = {0}")]
    NonTerminating(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("quadrature did not reach tolerance: estimate error {abs_error:e}")]
    QuadratureNonConvergence { abs_error: f64 },
}
