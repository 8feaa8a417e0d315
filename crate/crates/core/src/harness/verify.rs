use super::{HarnessError, TableFile};
use crate::anomaly::Side;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

const REFERENCE_X: &str = include_str!("../../data/reference_x.json");
const REFERENCE_Z: &str = include_str!("../../data/reference_z.json");

/// The shipped reference tables for both sides of the builtin model.
pub fn builtin_references() -> Vec<TableFile> {
    [REFERENCE_X, REFERENCE_Z].iter().map(|s| serde_json::from_str(s).expect("shipped reference parses")).collect()
}

pub fn parse_reference(path: &str, text: &str) -> Result<TableFile, HarnessError> {
    let t: TableFile = serde_json::from_str(text).map_err(|e| HarnessError::Reference { path: path.into(), detail: e.to_string() })?;
    for e in &t.entries {
        if e.d == 0 || e.n.parse::<rug::Integer>().is_err() {
            return Err(HarnessError::Reference { path: path.into(), detail: format!("bad cell g={} d={} n={:?}", e.g, e.d, e.n) });
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub side: Side,
    pub g: usize,
    pub d: usize,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
    /// computed cells the reference does not cover
    pub uncovered: Vec<(Side, usize, usize)>,
    /// reference cells the run did not compute
    pub missing: Vec<(Side, usize, usize)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.mismatches {
            writeln!(f, "mismatch side={} g={} d={} expected={} got={}", m.side, m.g, m.d, m.expected, m.got)?;
        }
        for (s, g, d) in &self.uncovered {
            writeln!(f, "uncovered side={s} g={g} d={d}")?;
        }
        for (s, g, d) in &self.missing {
            writeln!(f, "not computed side={s} g={g} d={d}")?;
        }
        write!(f, "{} cells compared, {} mismatches, {} uncovered, {} not computed", self.compared, self.mismatches.len(), self.uncovered.len(), self.missing.len())
    }
}

/// Cell-by-cell exact comparison of computed tables against references.
pub fn verify(computed: &[TableFile], references: &[TableFile]) -> VerifyReport {
    let mut report = VerifyReport::default();
    let mut refs: BTreeMap<Side, BTreeMap<(usize, usize), &str>> = BTreeMap::new();
    for r in references {
        refs.entry(r.side).or_default().extend(r.cells());
    }
    let mut seen: BTreeMap<Side, BTreeMap<(usize, usize), &str>> = BTreeMap::new();
    for t in computed {
        seen.entry(t.side).or_default().extend(t.cells());
    }
    for (&side, cells) in &seen {
        let empty = BTreeMap::new();
        let r = refs.get(&side).unwrap_or(&empty);
        for (&(g, d), &got) in cells {
            match r.get(&(g, d)) {
                None => report.uncovered.push((side, g, d)),
                Some(&expected) => {
                    report.compared += 1;
                    if expected.parse::<rug::Integer>().ok() != got.parse::<rug::Integer>().ok() || got.parse::<rug::Integer>().is_err() {
                        report.mismatches.push(Mismatch { side, g, d, expected: expected.into(), got: got.into() });
                    }
                }
            }
        }
    }
    for (&side, cells) in &refs {
        for &(g, d) in cells.keys() {
            if !seen.get(&side).is_some_and(|c| c.contains_key(&(g, d))) {
                report.missing.push((side, g, d));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_references_are_well_formed() {
        let refs = builtin_references();
        assert_eq!(refs.len(), 2);
        assert_eq!(refs[0].entries.len(), 105);
        assert_eq!(refs[1].entries.len(), 75);
        for (t, s) in refs.iter().zip([REFERENCE_X, REFERENCE_Z]) {
            assert_eq!(parse_reference("shipped", s).unwrap(), *t);
        }
        let x = refs[0].cells();
        assert_eq!(x[&(0, 17)], "846787615783681427068332");
        assert_eq!(x[&(3, 9)], "-1176");
        assert_eq!(refs[1].cells()[&(5, 8)], "3675");
    }

    #[test]
    fn one_perturbed_cell_one_mismatch() {
        let refs = builtin_references();
        let mut bad = refs.clone();
        bad[0].entries[10].n.push('1');
        let r = verify(&refs, &bad);
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.compared, 180);
        assert!(verify(&refs, &refs).passed());
    }

    #[test]
    fn missing_reference_cell_is_uncovered() {
        let refs = builtin_references();
        let mut partial = refs.clone();
        partial[1].entries.pop();
        let r = verify(&refs, &partial);
        assert!(r.passed());
        assert_eq!(r.uncovered, vec![(Side::Z, 5, 13)]);
    }

    #[test]
    fn malformed_reference_rejected() {
        assert!(parse_reference("r", "{\"side\": \"x\"}").is_err());
        assert!(parse_reference("r", r#"{"side":"x","entries":[{"g":0,"d":1,"n":"1.5"}]}"#).is_err());
    }
}
