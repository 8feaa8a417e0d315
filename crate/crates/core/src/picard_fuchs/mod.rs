//! The Picard-Fuchs operator of the model and its local solutions.

mod frobenius;
mod model;
mod operator;
mod periods;

pub use frobenius::{frobenius_basis, normalize_frobenius, FrobeniusBasis};
pub use model::{builtin_file, CYModel, ModelFile, SideData};
pub use operator::{indicial_roots, localize_operator, LocalOperator, ThetaOperator};
pub use periods::{apparent_periods, conifold_periods, large_volume_periods, local_basis, LocalPeriods, PointKind};

use crate::series::SeriesError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PfError {
    #[error("indicial polynomial has non-integer roots: {0}")]
    NonIntegerIndices(String),
    #[error("recurrence pivot vanishes at exponent {exponent} (log power {log_power})")]
    Resonance { exponent: i64, log_power: usize },
    #[error("solution combination matrix is singular")]
    Singular,
    #[error("{0}")]
    Precondition(String),
    #[error("model: {0}")]
    Model(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
