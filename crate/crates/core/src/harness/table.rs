use super::{Format, HarnessError};
use crate::anomaly::Side;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub g: usize,
    pub d: usize,
    /// decimal string, an integer or `p/q`
    pub n: String,
}

/// `{side, entries: [{g, d, n}], metadata}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableFile {
    pub side: Side,
    pub entries: Vec<TableEntry>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

impl TableFile {
    /// From `rows[g][d-1]`.
    pub fn from_rows<T: ToString>(side: Side, rows: &[Vec<T>], metadata: BTreeMap<String, String>) -> Self {
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(g, row)| row.iter().enumerate().map(move |(i, n)| TableEntry { g, d: i + 1, n: n.to_string() }))
            .collect();
        TableFile { side, entries, metadata }
    }

    pub fn cells(&self) -> BTreeMap<(usize, usize), &str> {
        self.entries.iter().map(|e| ((e.g, e.d), e.n.as_str())).collect()
    }

    pub fn genera(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.entries.iter().map(|e| e.g).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.entries.iter().map(|e| e.d).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// Rows `d`, columns `g`; absent cells are left blank.
pub fn render_table(t: &TableFile, format: Format) -> Result<String, HarnessError> {
    if format == Format::Json {
        return serde_json::to_string_pretty(t).map(|s| s + "\n").map_err(|e| HarnessError::io("table", e));
    }
    let cells = t.cells();
    let genera = t.genera();
    let mut out = String::new();
    let header: Vec<String> = std::iter::once("d".to_string()).chain(genera.iter().map(|g| format!("g={g}"))).collect();
    let row = |d: usize| -> Vec<String> {
        std::iter::once(d.to_string()).chain(genera.iter().map(|&g| cells.get(&(g, d)).map_or(String::new(), |s| s.to_string()))).collect()
    };
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(",")).unwrap();
            for d in t.degrees() {
                writeln!(out, "{}", row(d).join(",")).unwrap();
            }
        }
        Format::Markdown => {
            writeln!(out, "| {} |", header.join(" | ")).unwrap();
            writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
            for d in t.degrees() {
                writeln!(out, "| {} |", row(d).join(" | ")).unwrap();
            }
        }
        Format::Json => unreachable!(),
    }
    Ok(out)
}

/// Write `t` to `path` in `format`.
pub fn emit_table(t: &TableFile, format: Format, path: &std::path::Path) -> Result<(), HarnessError> {
    std::fs::write(path, render_table(t, format)?).map_err(|e| HarnessError::io(path.display(), e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TableFile {
        TableFile::from_rows(Side::Z, &[vec![588, 12103], vec![0, 0]], BTreeMap::new())
    }

    #[test]
    fn markdown_layout() {
        let s = render_table(&sample(), Format::Markdown).unwrap();
        assert_eq!(s, "| d | g=0 | g=1 |\n|---|---|---|\n| 1 | 588 | 0 |\n| 2 | 12103 | 0 |\n");
    }

    #[test]
    fn csv_layout() {
        assert_eq!(render_table(&sample(), Format::Csv).unwrap(), "d,g=0,g=1\n1,588,0\n2,12103,0\n");
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = TableFile::from_rows::<i64>(Side::X, &[], BTreeMap::new());
        assert_eq!(render_table(&t, Format::Csv).unwrap(), "d\n");
        assert_eq!(render_table(&t, Format::Markdown).unwrap(), "| d |\n|---|\n");
    }

    #[test]
    fn json_round_trip() {
        let s = render_table(&sample(), Format::Json).unwrap();
        assert!(s.contains("\"n\": \"12103\""));
        let back: TableFile = serde_json::from_str(&s).unwrap();
        assert_eq!(back, sample());
    }
}
