use super::HarnessError;
use crate::anomaly::{YYPoly, YYSerial};
use crate::exact::FactorBasis;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Identifies what a cache file was computed from; a file whose header
/// differs in any field is ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub kind: String,
    pub genus: usize,
    pub model_hash: String,
    pub q_order: i64,
    pub s_order: i64,
    pub schedule_hash: String,
}

#[derive(Serialize, Deserialize)]
struct CacheFile<T> {
    header: CacheHeader,
    body: T,
}

/// One JSON file per (genus, artifact kind) under a root directory.
#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
    model_hash: String,
    q_order: i64,
    s_order: i64,
    schedule_hash: String,
}

const KIND_P: &str = "integrated-p";

impl Cache {
    pub fn new(root: &Path, model_hash: &str, q_order: i64, s_order: i64, schedule_hash: &str) -> Self {
        Cache {
            root: root.to_path_buf(),
            model_hash: model_hash.into(),
            q_order,
            s_order,
            schedule_hash: schedule_hash.into(),
        }
    }

    fn header(&self, kind: &str, genus: usize) -> CacheHeader {
        CacheHeader {
            kind: kind.into(),
            genus,
            model_hash: self.model_hash.clone(),
            q_order: self.q_order,
            s_order: self.s_order,
            schedule_hash: self.schedule_hash.clone(),
        }
    }

    pub fn path(&self, kind: &str, genus: usize) -> PathBuf {
        self.root.join(format!("{kind}-g{genus}.json"))
    }

    /// `P^(g)` for every genus with a fresh, readable file.
    pub fn load_p(&self, basis: &Arc<FactorBasis>, max_genus: usize) -> BTreeMap<usize, YYPoly> {
        let mut out = BTreeMap::new();
        for g in 2..=max_genus {
            let path = self.path(KIND_P, g);
            let Ok(text) = std::fs::read_to_string(&path) else { continue };
            let file: CacheFile<YYSerial> = match serde_json::from_str(&text) {
                Ok(f) => f,
                Err(e) => {
                    log::warn!("ignoring unreadable cache file {}: {e}", path.display());
                    continue;
                }
            };
            if file.header != self.header(KIND_P, g) {
                log::info!("ignoring stale cache file {}", path.display());
                continue;
            }
            match YYPoly::from_serial(basis, &file.body) {
                Ok(p) => {
                    out.insert(g, p);
                }
                Err(e) => log::warn!("ignoring corrupt cache file {}: {e}", path.display()),
            }
        }
        out
    }

    pub fn store_p(&self, genus: usize, p: &YYPoly) -> Result<(), HarnessError> {
        std::fs::create_dir_all(&self.root).map_err(|e| HarnessError::io(self.root.display(), e))?;
        let path = self.path(KIND_P, genus);
        let file = CacheFile { header: self.header(KIND_P, genus), body: p.to_serial() };
        let text = serde_json::to_string(&file).map_err(|e| HarnessError::io(path.display(), e))?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text).map_err(|e| HarnessError::io(tmp.display(), e))?;
        std::fs::rename(&tmp, &path).map_err(|e| HarnessError::io(path.display(), e))
    }
}
