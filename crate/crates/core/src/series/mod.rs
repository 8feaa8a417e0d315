//! Truncated Laurent series and logarithmic series over an exact field.

mod logseries;
mod truncated;

pub use logseries::{Frame, LogSeries};
pub use truncated::{SeriesSerial, TruncatedSeries};

use crate::exact::ArithError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("series has no invertible leading coefficient")]
    ZeroLeading,
    #[error("divisor carries log terms")]
    LogDivisor,
    #[error("inner series must have positive valuation")]
    ConstantTerm,
    #[error("series has no linear term to invert")]
    ZeroLinear,
    #[error("coefficient needed up to order {need} but series is known to order {have}")]
    Truncated { need: i64, have: i64 },
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
