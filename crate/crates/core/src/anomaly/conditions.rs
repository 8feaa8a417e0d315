use super::{AffineSeries, AnomalyError};
use crate::exact::{AlgebraicNumber, Echelon, Field, LinSolveError, Rational};
use crate::gv::{constant_map_term, gap_constant, k_power, sine_coefficients};
use rug::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The two large-volume points: `x = 0` and `z = 1/x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Z,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "x",
            Side::Z => "z",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RowTag {
    /// `[V^-k]` vanishes, component of `alpha^component`
    Gap { k: usize, component: usize },
    /// `[V^-(2g-2)]` equals the gap constant times `k_U^(2g-2)`
    Leading { component: usize },
    /// `[U^-k]` vanishes at `x = 3`
    Apparent { k: usize },
    ConstantMap { side: Side },
    Vanishing { side: Side, d: usize },
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::Gap { k, component } => write!(f, "gap(1/V^{k}, alpha^{component})"),
            RowTag::Leading { component } => write!(f, "leading(alpha^{component})"),
            RowTag::Apparent { k } => write!(f, "x3(1/U^{k})"),
            RowTag::ConstantMap { side } => write!(f, "constant-map({side})"),
            RowTag::Vanishing { side, d } => write!(f, "vanishing({side}, d={d})"),
        }
    }
}

/// `coeffs . unknowns = rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionRow {
    pub tag: RowTag,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl ConditionRow {
    pub fn residual(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).fold(-self.rhs.clone(), |acc, (a, b)| acc + a.clone() * b.clone())
    }
}

/// A value affine in the unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine {
    pub c: Rational,
    pub v: Vec<Rational>,
}

impl Affine {
    pub fn constant(c: Rational, n: usize) -> Self {
        Affine { c, v: vec![Rational::zero(); n] }
    }

    pub fn sub(&self, o: &Affine) -> Affine {
        Affine { c: self.c.clone() - o.c.clone(), v: self.v.iter().zip(&o.v).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Affine {
        Affine { c: self.c.clone() * r.clone(), v: self.v.iter().map(|a| a.clone() * r.clone()).collect() }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.v.iter().zip(x).fold(self.c.clone(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// The row `self = target`.
    pub fn row(&self, tag: RowTag, target: Rational) -> ConditionRow {
        ConditionRow { tag, coeffs: self.v.clone(), rhs: target - self.c.clone() }
    }
}

/// Which rows to use at one genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusSchedule {
    pub vanishing_x: Vec<usize>,
    pub vanishing_z: Vec<usize>,
    /// use the `x = 3` rows from the start rather than keeping them for verification
    #[serde(default)]
    pub apparent: bool,
    /// extend with further vanishing rows (then `x = 3` rows) until full rank
    #[serde(default = "default_true")]
    pub greedy: bool,
}

fn default_true() -> bool {
    true
}

impl GenusSchedule {
    pub fn default_for(g: usize) -> Self {
        let top = match g {
            2 => 4,
            3 => 5,
            _ => 2 * g - 3,
        };
        GenusSchedule { vanishing_x: (1..=top).collect(), vanishing_z: vec![1, 2], apparent: false, greedy: true }
    }
}

/// Per-genus overrides; genera without an entry use [`GenusSchedule::default_for`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    #[serde(default)]
    pub genera: BTreeMap<usize, GenusSchedule>,
}

impl Schedule {
    pub fn get(&self, g: usize) -> GenusSchedule {
        self.genera.get(&g).cloned().unwrap_or_else(|| GenusSchedule::default_for(g))
    }
}

/// `n_g(d)` for `d = 1..=dmax` as affine values, given `F_g` in the flat
/// coordinate and the lower-genus invariants `lower[h][d-1]`.
pub fn affine_gv(f: &AffineSeries<Rational>, g: usize, lower: &[Vec<Integer>], dmax: usize) -> Result<Vec<Affine>, AnomalyError> {
    let a = sine_coefficients(g);
    let mut out: Vec<Affine> = Vec::with_capacity(dmax);
    for d in 1..=dmax {
        let (c, v) = f.coeff(d as i64)?;
        let mut n = Affine { c, v };
        let nv = n.v.len();
        for k in (1..=d).filter(|k| d % k == 0) {
            let kp = k_power(k, 2 * g as i64 - 3);
            for h in 0..g {
                let lo = lower
                    .get(h)
                    .and_then(|r| r.get(d / k - 1))
                    .ok_or_else(|| AnomalyError::Condition { genus: g, detail: format!("n_{h}({}) not available", d / k) })?;
                if *lo != 0 {
                    let t = kp.clone() * a[h][g - h].clone() * Rational::from_integer(lo.clone());
                    n = n.sub(&Affine::constant(t, nv));
                }
            }
            if k > 1 {
                n = n.sub(&out[d / k - 1].scale(&kp));
            }
        }
        out.push(n);
    }
    Ok(out)
}

fn component(a: &AlgebraicNumber, j: usize) -> Rational {
    a.coeffs().get(j).cloned().unwrap_or_else(Rational::zero)
}

/// Gap rows `[V^-k] = 0`, `k = 1..=2g-3`, three per coefficient.
pub fn gap_rows(f: &AffineSeries<AlgebraicNumber>, g: usize) -> Result<Vec<ConditionRow>, AnomalyError> {
    let mut rows = Vec::new();
    for k in 1..=(2 * g - 3) {
        let (c, v) = f.coeff(-(k as i64))?;
        for j in 0..c.minpoly().degree() {
            let aff = Affine { c: component(&c, j), v: v.iter().map(|x| component(x, j)).collect() };
            rows.push(aff.row(RowTag::Gap { k, component: j }, Rational::zero()));
        }
    }
    Ok(rows)
}

/// `[V^-(2g-2)] = |B_2g|/(2g(2g-2)) (k_U^2)^(g-1)`.
pub fn leading_rows(f: &AffineSeries<AlgebraicNumber>, g: usize, k_u2: &AlgebraicNumber) -> Result<Vec<ConditionRow>, AnomalyError> {
    let (c, v) = f.coeff(-(2 * g as i64 - 2))?;
    let target = k_u2.pow(g as u32 - 1).mul_rational(&gap_constant(g));
    Ok((0..c.minpoly().degree())
        .map(|j| {
            let aff = Affine { c: component(&c, j), v: v.iter().map(|x| component(x, j)).collect() };
            aff.row(RowTag::Leading { component: j }, component(&target, j))
        })
        .collect())
}

/// `[U^-k] = 0` at `x = 3`, `k = 1..=2g-2`.
pub fn apparent_rows(f: &AffineSeries<Rational>, g: usize) -> Result<Vec<ConditionRow>, AnomalyError> {
    (1..=(2 * g - 2))
        .map(|k| {
            let (c, v) = f.coeff(-(k as i64))?;
            Ok(Affine { c, v }.row(RowTag::Apparent { k }, Rational::zero()))
        })
        .collect()
}

pub fn constant_row(f: &AffineSeries<Rational>, g: usize, side: Side, chi: i64) -> Result<ConditionRow, AnomalyError> {
    let (c, v) = f.coeff(0)?;
    Ok(Affine { c, v }.row(RowTag::ConstantMap { side }, constant_map_term(g, chi)?))
}

pub fn vanishing_row(n: &[Affine], side: Side, d: usize) -> ConditionRow {
    n[d - 1].row(RowTag::Vanishing { side, d }, Rational::zero())
}

/// Outcome of solving one genus.
#[derive(Debug, Clone)]
pub struct SolvedSystem {
    pub values: Vec<Rational>,
    pub used: Vec<RowTag>,
    /// every row that was built, with whether it was used and its residual
    pub checks: Vec<RowCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowCheck {
    pub tag: RowTag,
    pub used: bool,
    pub satisfied: bool,
}

/// Start from `scheduled`, then add rows of `extra` in order whenever they
/// raise the rank, until the rank equals the number of unknowns.
pub fn solve_rows(g: usize, unknowns: usize, scheduled: Vec<ConditionRow>, extra: Vec<ConditionRow>, greedy: bool) -> Result<SolvedSystem, AnomalyError> {
    let echelon = |rows: &[ConditionRow]| -> Result<Echelon, AnomalyError> {
        let a: Vec<Vec<Rational>> = rows.iter().map(|r| r.coeffs.clone()).collect();
        let b: Vec<Rational> = rows.iter().map(|r| r.rhs.clone()).collect();
        Echelon::new(&a, &b).map_err(|e| AnomalyError::Condition { genus: g, detail: e.to_string() })
    };
    let mut used = scheduled;
    let mut rank = echelon(&used)?.rank();
    let mut rest = Vec::new();
    for row in extra {
        if greedy && rank < unknowns {
            used.push(row);
            let r = echelon(&used)?.rank();
            if r > rank {
                rank = r;
                continue;
            }
            rest.push(used.pop().unwrap());
        } else {
            rest.push(row);
        }
    }
    let values = echelon(&used)?.solve().map_err(|e| match e {
        LinSolveError::Inconsistent { row } => AnomalyError::Inconsistent { genus: g, row: used[row].tag.to_string() },
        LinSolveError::Underdetermined { rank, unknowns } => AnomalyError::Underdetermined { genus: g, nullity: unknowns - rank },
        e => AnomalyError::Condition { genus: g, detail: e.to_string() },
    })?;
    let check = |r: &ConditionRow, u: bool| RowCheck { tag: r.tag.clone(), used: u, satisfied: r.residual(&values).is_zero() };
    let checks = used.iter().map(|r| check(r, true)).chain(rest.iter().map(|r| check(r, false))).collect();
    Ok(SolvedSystem { values, used: used.iter().map(|r| r.tag.clone()).collect(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    #[test]
    fn affine_gv_matches_table_conversion() {
        // a single unknown scaling the whole q-series
        let lower = vec![vec![Integer::from(3), Integer::from(5)], vec![Integer::from(0), Integer::from(7)]];
        let g = 2;
        let n_true = [Integer::from(11), Integer::from(-4)];
        let mut t = crate::gv::GvTable::zeros("x", 2, 2);
        t.n[0] = lower[0].clone();
        t.n[1] = lower[1].clone();
        t.n[2] = n_true.to_vec();
        let gw = crate::gv::gv_to_gw(&t);
        let series = TruncatedSeries::new("q", 0, vec![Rational::zero(), gw[2][0].clone(), gw[2][1].clone()], 3, &Rational::zero());
        let base = TruncatedSeries::zero("q", &Rational::zero(), 3);
        let f = AffineSeries { base, terms: vec![series] };
        let n = affine_gv(&f, g, &lower, 2).unwrap();
        let one = [Rational::one()];
        assert_eq!(n[0].eval(&one), Rational::from(11));
        assert_eq!(n[1].eval(&one), Rational::from(-4));
    }

    #[test]
    fn greedy_selection_and_checks() {
        let row = |tag, c: &[i64], r: i64| ConditionRow { tag, coeffs: c.iter().map(|&v| Rational::from(v)).collect(), rhs: Rational::from(r) };
        let v = |d| RowTag::Vanishing { side: Side::X, d };
        let s = solve_rows(2, 2, vec![row(v(1), &[1, 1], 2)], vec![row(v(2), &[2, 2], 4), row(v(3), &[1, -1], 0), row(v(4), &[1, 0], 5)], true).unwrap();
        assert_eq!(s.values, vec![Rational::one(), Rational::one()]);
        assert_eq!(s.used, vec![v(1), v(3)]);
        let failed: Vec<_> = s.checks.iter().filter(|c| !c.satisfied).map(|c| c.tag.clone()).collect();
        assert_eq!(failed, vec![v(4)]);
        assert!(matches!(solve_rows(2, 2, vec![row(v(1), &[1, 1], 2)], vec![], false), Err(AnomalyError::Underdetermined { nullity: 1, .. })));
    }
}
