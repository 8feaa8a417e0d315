use super::{sha256_hex, Cache, HarnessError, RunConfig, TableFile};
use crate::anomaly::{AnomalyError, Pipeline, RowCheck, RowTag, Schedule, Side, SolveOutput};
use crate::exact::{AlgebraicSerial, Rational};
use crate::mirror::MirrorError;
use crate::picard_fuchs::CYModel;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub model: String,
    pub model_hash: String,
    pub max_genus: usize,
    pub q_order: i64,
    pub s_order: i64,
    pub degree_x: usize,
    pub degree_z: usize,
    pub schedule: Schedule,
    pub schedule_hash: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenusRecord {
    pub genus: usize,
    /// coefficients of the ambiguity ansatz in order, as `(name, value)`
    pub ambiguity: Vec<(String, Rational)>,
    pub f: String,
    pub rows_used: Vec<RowTag>,
    pub checks: Vec<RowCheck>,
    /// `[V^-k]` at the conifold for `k = 2g-2, ..., 1`
    pub conifold_polar: Vec<AlgebraicSerial>,
    /// `[U^-k]` at `x = 3` for `k = 2g-2, ..., 1`
    pub apparent_polar: Vec<Rational>,
    pub constant_terms: BTreeMap<Side, Rational>,
}

impl GenusRecord {
    pub fn coefficient(&self, name: &str) -> Option<&Rational> {
        self.ambiguity.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub metadata: RunMetadata,
    pub k_u2: Option<AlgebraicSerial>,
    pub k_u2_text: Option<String>,
    /// Gopakumar-Vafa tables, one per side
    pub gv: Vec<TableFile>,
    /// Gromov-Witten coefficients `N_g(d)`, one per side
    pub gw: Vec<TableFile>,
    pub genera: Vec<GenusRecord>,
}

impl ResultBundle {
    pub fn gv_table(&self, side: Side) -> Option<&TableFile> {
        self.gv.iter().find(|t| t.side == side)
    }

    pub fn gv_value(&self, side: Side, g: usize, d: usize) -> Option<rug::Integer> {
        self.gv_table(side)?.entries.iter().find(|e| e.g == g && e.d == d)?.n.parse().ok()
    }

    pub fn genus(&self, g: usize) -> Option<&GenusRecord> {
        self.genera.iter().find(|r| r.genus == g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes") + "\n"
    }

    pub fn from_json(path: &str, text: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(text).map_err(|e| HarnessError::io(path, e))
    }
}

/// Wall-clock seconds per stage, kept apart from the bundle so that the
/// bundle stays byte-identical between runs.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Timings {
    pub stages: Vec<(String, f64)>,
    pub cached_genera: Vec<usize>,
}

fn module_of(e: &AnomalyError) -> &'static str {
    match e.root() {
        AnomalyError::Mirror(MirrorError::Pf(_)) => "picard-fuchs",
        AnomalyError::Mirror(_) => "mirror-maps",
        AnomalyError::Gv(_) => "gv-bridge",
        _ => "anomaly-solver",
    }
}

fn wrap(operation: &'static str) -> impl Fn(AnomalyError) -> HarnessError {
    move |source| HarnessError::Anomaly { module: module_of(&source), operation, source }
}

pub fn run_solve(config: &RunConfig) -> Result<(ResultBundle, Timings), HarnessError> {
    config.validate()?;
    let model = config.model.load()?;
    run_solve_with(config, &model)
}

/// [`run_solve`] for an already loaded model.
pub fn run_solve_with(config: &RunConfig, model: &CYModel) -> Result<(ResultBundle, Timings), HarnessError> {
    config.validate()?;
    let model_hash = sha256_hex(model.to_json().as_bytes());
    let schedule = config.effective_schedule();
    let schedule_hash = sha256_hex(serde_json::to_string(&schedule).expect("schedule serializes").as_bytes());
    let mut timings = Timings::default();

    let t = Instant::now();
    let pipeline = Pipeline::new(model, config.solver_config()).map_err(wrap("setup"))?;
    timings.stages.push(("setup".into(), t.elapsed().as_secs_f64()));

    let cache = config.cache_dir.as_ref().map(|d| Cache::new(d, &model_hash, config.q_order, config.s_order(), &schedule_hash));
    let cached = cache.as_ref().map(|c| c.load_p(&pipeline.ring.basis, config.max_genus)).unwrap_or_default();
    timings.cached_genera = cached.keys().copied().collect();

    let t = Instant::now();
    let out = pipeline.run(&cached).map_err(wrap("solve"))?;
    timings.stages.push(("solve".into(), t.elapsed().as_secs_f64()));

    if let Some(c) = &cache {
        let t = Instant::now();
        for r in &out.genera {
            if !cached.contains_key(&r.genus) {
                c.store_p(r.genus, &r.p)?;
            }
        }
        timings.stages.push(("cache".into(), t.elapsed().as_secs_f64()));
    }

    let metadata = RunMetadata {
        model: model.name.clone(),
        model_hash,
        max_genus: config.max_genus,
        q_order: config.q_order,
        s_order: config.s_order(),
        degree_x: config.degree_x,
        degree_z: config.degree_z,
        schedule,
        schedule_hash,
        version: env!("CARGO_PKG_VERSION").into(),
    };
    Ok((bundle_from(metadata, &out), timings))
}

fn bundle_from(metadata: RunMetadata, out: &SolveOutput) -> ResultBundle {
    let meta = |kind: &str| BTreeMap::from([("model".to_string(), metadata.model.clone()), ("kind".to_string(), kind.to_string())]);
    let gv = out.gv.iter().map(|(&s, rows)| TableFile::from_rows(s, rows, meta("gopakumar-vafa"))).collect();
    let gw = out.gw.iter().map(|(&s, rows)| TableFile::from_rows(s, rows, meta("gromov-witten"))).collect();
    let genera = out
        .genera
        .iter()
        .map(|r| GenusRecord {
            genus: r.genus,
            ambiguity: r.names.iter().cloned().zip(r.values.iter().cloned()).collect(),
            f: r.f.to_string(),
            rows_used: r.used.clone(),
            checks: r.checks.clone(),
            conifold_polar: r.conifold_polar.iter().map(|a| a.to_serial()).collect(),
            apparent_polar: r.apparent_polar.clone(),
            constant_terms: r.constant_terms.clone(),
        })
        .collect();
    ResultBundle {
        metadata,
        k_u2: out.k_u2.as_ref().map(|k| k.to_serial()),
        k_u2_text: out.k_u2.as_ref().map(|k| k.to_string()),
        gv,
        gw,
        genera,
    }
}
