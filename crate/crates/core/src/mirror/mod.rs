//! Flat coordinates, mirror maps and the genus zero and one data at each special point.

mod frame;
mod genus;

pub use frame::{build_conifold_frame, build_frame, yvar, AbLimits, TopologicalFrame};
pub use genus::{genus_one_invariants, genus_one_rho, genus_one_series, genus_zero_invariants, instanton_part, theta_f1_limit};

use crate::exact::ArithError;
use crate::picard_fuchs::PfError;
use crate::series::SeriesError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MirrorError {
    #[error("branch: {0}")]
    Branch(String),
    #[error("{0}")]
    Arith(String),
    #[error(transparent)]
    Pf(#[from] PfError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl From<ArithError> for MirrorError {
    fn from(e: ArithError) -> Self {
        MirrorError::Series(e.into())
    }
}
