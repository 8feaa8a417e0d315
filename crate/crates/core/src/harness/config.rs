use super::HarnessError;
use crate::anomaly::{Schedule, SolverConfig};
use crate::picard_fuchs::CYModel;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const CACHE_ENV: &str = "GWGV_CACHE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelSource {
    Builtin,
    File(PathBuf),
}

impl FromStr for ModelSource {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s.strip_prefix("builtin:") {
            Some("gr-pf") => Ok(ModelSource::Builtin),
            Some(other) => Err(HarnessError::Config(format!("unknown builtin model {other}"))),
            None => Ok(ModelSource::File(s.into())),
        }
    }
}

impl ModelSource {
    pub fn load(&self) -> Result<CYModel, HarnessError> {
        match self {
            ModelSource::Builtin => Ok(CYModel::builtin()),
            ModelSource::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| HarnessError::io(p.display(), e))?;
                Ok(CYModel::from_json(&text)?)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "md",
        }
    }
}

impl FromStr for Format {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(HarnessError::Config(format!("unknown format {s}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: ModelSource,
    pub max_genus: usize,
    pub q_order: i64,
    /// `2 max_genus + 6` when unset
    pub s_order: Option<i64>,
    pub degree_x: usize,
    pub degree_z: usize,
    pub schedule: Schedule,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SolverConfig::default();
        RunConfig {
            model: ModelSource::Builtin,
            max_genus: s.max_genus,
            q_order: s.q_order,
            s_order: None,
            degree_x: s.degree_x,
            degree_z: s.degree_z,
            schedule: Schedule::default(),
            cache_dir: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn s_order(&self) -> i64 {
        self.s_order.unwrap_or(2 * self.max_genus as i64 + 6)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if !(1..=5).contains(&self.max_genus) {
            return Err(HarnessError::Config(format!("genus must be in 1..=5, got {}", self.max_genus)));
        }
        let dmax = self.degree_x.max(self.degree_z);
        if self.q_order < dmax as i64 + 4 {
            return Err(HarnessError::Config(format!("q-order {} is below the largest degree {dmax} plus 4", self.q_order)));
        }
        let need = 2 * self.max_genus as i64 + 4;
        if self.s_order() < need {
            return Err(HarnessError::Config(format!("s-order {} is below 2 * genus + 4 = {need}", self.s_order())));
        }
        for (&g, s) in &self.schedule.genera {
            let bad = |list: &[usize], max: usize| list.iter().any(|&d| d == 0 || d > max);
            if bad(&s.vanishing_x, self.degree_x) || bad(&s.vanishing_z, self.degree_z) {
                return Err(HarnessError::Config(format!("schedule for genus {g} names a degree outside the table")));
            }
        }
        Ok(())
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            max_genus: self.max_genus,
            q_order: self.q_order,
            s_order: Some(self.s_order()),
            degree_x: self.degree_x,
            degree_z: self.degree_z,
            schedule: self.schedule.clone(),
        }
    }

    /// The flag wins over the environment.
    pub fn resolve_cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
        flag.or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
    }

    pub fn read_schedule(path: &Path) -> Result<Schedule, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path.display(), e))?;
        serde_json::from_str(&text).map_err(|e| HarnessError::Config(format!("schedule {}: {e}", path.display())))
    }

    /// The schedule actually applied at every genus.
    pub fn effective_schedule(&self) -> Schedule {
        Schedule { genera: (2..=self.max_genus).map(|g| (g, self.schedule.get(g))).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_checks() {
        let mut c = RunConfig::default();
        c.validate().unwrap();
        c.q_order = 21;
        assert!(matches!(c.validate(), Err(HarnessError::Config(_))));
        c.q_order = 22;
        c.validate().unwrap();
        c.s_order = Some(13);
        assert!(c.validate().is_err());
        c.s_order = Some(14);
        c.validate().unwrap();
        c.max_genus = 6;
        assert!(c.validate().is_err());
    }

    #[test]
    fn parse_sources_and_formats() {
        assert_eq!("builtin:gr-pf".parse::<ModelSource>().unwrap(), ModelSource::Builtin);
        assert!("builtin:quintic".parse::<ModelSource>().is_err());
        assert_eq!("m.json".parse::<ModelSource>().unwrap(), ModelSource::File("m.json".into()));
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn cache_flag_beats_environment() {
        std::env::set_var(CACHE_ENV, "/from/env");
        assert_eq!(RunConfig::resolve_cache_dir(Some("/flag".into())), Some(PathBuf::from("/flag")));
        assert_eq!(RunConfig::resolve_cache_dir(None), Some(PathBuf::from("/from/env")));
        std::env::remove_var(CACHE_ENV);
    }
}
