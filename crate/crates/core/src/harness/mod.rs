//! Batch driver: configuration, caching, result bundles, table emitters and verification.

mod bundle;
mod cache;
mod config;
mod expand;
mod table;
mod verify;

pub use bundle::{run_solve, run_solve_with, GenusRecord, ResultBundle, RunMetadata, Timings};
pub use cache::{Cache, CacheHeader};
pub use config::{Format, ModelSource, RunConfig};
pub use expand::{expand, ExpandPoint, Expansion};
pub use table::{emit_table, render_table, TableEntry, TableFile};
pub use verify::{builtin_references, parse_reference, verify, Mismatch, VerifyReport};

use crate::anomaly::AnomalyError;
use crate::mirror::MirrorError;
use crate::picard_fuchs::PfError;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{path}: {detail}")]
    Io { path: String, detail: String },
    #[error("{module}, {operation}: {source}")]
    Anomaly { module: &'static str, operation: &'static str, source: AnomalyError },
    #[error("{module}, {operation}: {source}")]
    Mirror { module: &'static str, operation: &'static str, source: MirrorError },
    #[error("model: {0}")]
    Model(#[from] PfError),
    #[error("malformed reference {path}: {detail}")]
    Reference { path: String, detail: String },
}

impl HarnessError {
    /// 2 for configuration and file problems, 3 for mathematical inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Io { .. } | HarnessError::Model(_) | HarnessError::Reference { .. } => 2,
            HarnessError::Anomaly { .. } | HarnessError::Mirror { .. } => 3,
        }
    }

    pub fn io(path: impl std::fmt::Display, e: impl std::fmt::Display) -> Self {
        HarnessError::Io { path: path.to_string(), detail: e.to_string() }
    }
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
