//! The genus >= 2 engine: polynomial ring, propagators, recursion, topological
//! limits and the linear system fixing the holomorphic ambiguity.

mod conditions;
mod feynman;
mod propagators;
mod r_of_x;
mod recursion;
mod ring;
mod solver;
mod structure;
mod topological;

pub use conditions::{
    affine_gv, apparent_rows, constant_row, gap_rows, leading_rows, solve_rows, vanishing_row, Affine, ConditionRow, GenusSchedule, RowCheck, RowTag,
    Schedule, Side, SolvedSystem,
};
pub use solver::{GenusResult, Pipeline, SolveOutput, SolverConfig};
pub use feynman::genus_two_from_graphs;
pub use propagators::{build_propagators, covariant_x, sx_from_sxx, yukawa, PropagatorFrame};
pub use r_of_x::{derive_r_of_x, r_series};
pub use recursion::{
    anomaly_defect, anomaly_rhs, covariant_step, eval_at_vanishing_point, genus_data, genus_one_data, genus_one_p1, integrate_pg, solve_recursion, u_defect, with_ambiguity,
    weight_factor, GenusData, V2Sign,
};
pub use ring::{Chart, Mono, YYPoly, YYSerial};
pub use topological::{ambiguity_ansatz, assemble_ambiguity, topological_fg, AffineSeries, AnsatzTerm};
pub use structure::{eval_series, expand_coeff, model_basis, theta_log_xc, YYRing};

use crate::exact::ArithError;
use crate::gv::GvError;
use crate::mirror::MirrorError;
use crate::series::SeriesError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnomalyError {
    #[error("model: {0}")]
    Model(String),
    #[error("r(x): {0}")]
    RationalReconstruction(String),
    #[error("genus {genus}: integrability fails ({detail})")]
    Integrability { genus: usize, detail: String },
    #[error("vanishing point: {0}")]
    VanishingPoint(String),
    #[error("genus {genus}: system is inconsistent at row {row}")]
    Inconsistent { genus: usize, row: String },
    #[error("genus {genus}: system is underdetermined (nullity {nullity}); add vanishing rows")]
    Underdetermined { genus: usize, nullity: usize },
    #[error("genus {genus}: {detail}")]
    Condition { genus: usize, detail: String },
    #[error("genus {genus}, {stage}: {source}")]
    Stage { genus: usize, stage: &'static str, source: Box<AnomalyError> },
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Gv(#[from] GvError),
}

impl AnomalyError {
    pub fn at(genus: usize, stage: &'static str) -> impl FnOnce(AnomalyError) -> AnomalyError {
        move |e| AnomalyError::Stage { genus, stage, source: Box::new(e) }
    }

    /// The error with any [`AnomalyError::Stage`] wrappers removed.
    pub fn root(&self) -> &AnomalyError {
        match self {
            AnomalyError::Stage { source, .. } => source.root(),
            e => e,
        }
    }
}

impl From<SeriesError> for AnomalyError {
    fn from(e: SeriesError) -> Self {
        AnomalyError::Mirror(e.into())
    }
}

impl From<ArithError> for AnomalyError {
    fn from(e: ArithError) -> Self {
        AnomalyError::Mirror(e.into())
    }
}
