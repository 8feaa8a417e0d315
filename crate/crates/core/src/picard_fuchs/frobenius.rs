use super::{indicial_roots, LocalOperator, PfError};
use crate::exact::{Field, Poly, Rational};
use crate::series::{LogSeries, TruncatedSeries};

const MAX_LOG: usize = 3;

/// Local solution basis, one solution per free Frobenius parameter.
///
/// The solution labelled `(n, j)` has coefficient 1 at `s^n log(s)^j` and 0
/// at every other free position `(n', j')`, where `n'` runs over the indices
/// and `j'` below the multiplicity of `n'`.
#[derive(Debug, Clone)]
pub struct FrobeniusBasis<C: Field> {
    pub indices: Vec<(i64, usize)>,
    pub labels: Vec<(i64, usize)>,
    pub solutions: Vec<LogSeries<C>>,
}

impl<C: Field> FrobeniusBasis<C> {
    pub fn solution(&self, n: i64, j: usize) -> Option<&LogSeries<C>> {
        self.labels.iter().position(|l| *l == (n, j)).map(|i| &self.solutions[i])
    }

    /// Indices with multiplicity, ascending.
    pub fn index_multiset(&self) -> Vec<i64> {
        self.indices.iter().flat_map(|(r, m)| std::iter::repeat(*r).take(*m)).collect()
    }

    pub fn order(&self) -> i64 {
        self.solutions.iter().map(|s| s.order()).min().unwrap_or(0)
    }
}

fn factorial_ratio(j: usize, m: usize) -> i64 {
    ((m + 1)..=j).map(|t| t as i64).product()
}

/// `M(n)[m][j] = l^{(j-m)}(n)/(j-m)! * j!/m!` for one row polynomial `l`.
fn row_matrix<C: Field>(l: &Poly<C>, n: i64) -> Vec<Vec<C>> {
    let proto = l.proto().clone();
    let t = l.taylor_shift(&proto.from_int_like(n));
    let mut m = vec![vec![proto.zero_like(); MAX_LOG + 1]; MAX_LOG + 1];
    for (a, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate().skip(a) {
            let c = t.coeff(j - a);
            if !c.is_zero() {
                *entry = c.mul_rational(&Rational::from(factorial_ratio(j, a)));
            }
        }
    }
    m
}

/// Solve the local recurrence coefficient by coefficient up to `s^(order-1)`.
pub fn frobenius_basis<C: Field>(op: &LocalOperator<C>, order: i64) -> Result<FrobeniusBasis<C>, PfError> {
    let indices = indicial_roots(op)?;
    let proto = op.indicial().proto().clone();
    let n0 = indices[0].0;
    let top = indices.last().unwrap().0;
    if order < top + 3 {
        return Err(PfError::Precondition(format!("truncation order {order} below max index + 3")));
    }
    let mult = |n: i64| indices.iter().find(|(r, _)| *r == n).map_or(0, |(_, m)| *m);
    let labels: Vec<(i64, usize)> = indices.iter().flat_map(|&(r, m)| (0..m).map(move |j| (r, j))).collect();
    let len = (order - n0) as usize;
    // matrices[i][n - n0] = M_i(n)
    let mut mats: Vec<Vec<Vec<Vec<C>>>> = Vec::new();
    for row in &op.rows {
        mats.push((0..len).map(|k| row_matrix(row, n0 + k as i64)).collect());
    }
    let mut solutions = Vec::new();
    for &(tn, tj) in &labels {
        let mut c: Vec<Vec<C>> = vec![vec![proto.zero_like(); MAX_LOG + 1]; len];
        for k in 0..len {
            let n = n0 + k as i64;
            if n < tn {
                continue;
            }
            let mut rhs = vec![proto.zero_like(); MAX_LOG + 1];
            for (i, mi) in mats.iter().enumerate().skip(1) {
                if k < i {
                    break;
                }
                let prev = &c[k - i];
                if prev.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let m = &mi[k - i];
                for (a, r) in rhs.iter_mut().enumerate() {
                    for j in a..=MAX_LOG {
                        if !m[a][j].is_zero() && !prev[j].is_zero() {
                            r.sub_assign(&m[a][j].mul(&prev[j]));
                        }
                    }
                }
            }
            let m0 = &mats[0][k];
            let mu = mult(n);
            let cur = &mut c[k];
            if mu > 0 {
                for j in 0..mu {
                    if n == tn && j == tj {
                        cur[j] = proto.one_like();
                    }
                }
            }
            for a in (0..=MAX_LOG).rev() {
                let lead = a + mu;
                let mut r = rhs[a].clone();
                for j in (lead + 1)..=MAX_LOG {
                    if !m0[a][j].is_zero() && !cur[j].is_zero() {
                        r.sub_assign(&m0[a][j].mul(&cur[j]));
                    }
                }
                if lead > MAX_LOG {
                    if !r.is_zero() {
                        return Err(PfError::Resonance { exponent: n, log_power: lead });
                    }
                    continue;
                }
                let piv = &m0[a][lead];
                if piv.is_zero() {
                    return Err(PfError::Resonance { exponent: n, log_power: lead });
                }
                cur[lead] = r.div(piv).map_err(|e| PfError::Series(e.into()))?;
            }
        }
        let parts: Vec<TruncatedSeries<C>> = (0..=MAX_LOG)
            .map(|j| TruncatedSeries::new(&op.var, n0, c.iter().map(|row| row[j].clone()).collect(), order, &proto))
            .collect();
        solutions.push(LogSeries::new(parts)?);
    }
    Ok(FrobeniusBasis { indices, labels, solutions })
}

fn invert<C: Field>(mut a: Vec<Vec<C>>) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    let proto = a[0][0].zero_like();
    let mut inv: Vec<Vec<C>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { proto.one_like() } else { proto.zero_like() }).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let pi = a[col][col].inv().ok()?;
        for j in 0..n {
            a[col][j] = a[col][j].mul(&pi);
            inv[col][j] = inv[col][j].mul(&pi);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = a[col][j].mul(&f);
                    a[r][j].sub_assign(&t);
                    let t = inv[col][j].mul(&f);
                    inv[r][j].sub_assign(&t);
                }
            }
        }
    }
    Some(inv)
}

/// Recombine an arbitrary set of solutions into the canonical labelled basis.
///
/// The coordinates of a solution are its coefficients at the free positions;
/// the canonical basis is the one with unit coordinates, so the operation is
/// idempotent.
pub fn normalize_frobenius<C: Field>(basis: &FrobeniusBasis<C>) -> Result<FrobeniusBasis<C>, PfError> {
    let n = basis.labels.len();
    if basis.solutions.len() != n {
        return Err(PfError::Singular);
    }
    let coords: Vec<Vec<C>> = basis
        .solutions
        .iter()
        .map(|s| basis.labels.iter().map(|&(r, j)| s.part(j).coeff(r)).collect())
        .collect();
    let inv = invert(coords).ok_or(PfError::Singular)?;
    let mut solutions = Vec::with_capacity(n);
    for row in &inv {
        let mut acc: Option<LogSeries<C>> = None;
        for (c, s) in row.iter().zip(&basis.solutions) {
            if c.is_zero() {
                continue;
            }
            let t = s.scale(c);
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        solutions.push(acc.ok_or(PfError::Singular)?);
    }
    Ok(FrobeniusBasis { indices: basis.indices.clone(), labels: basis.labels.clone(), solutions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard_fuchs::{localize_operator, CYModel};
    use crate::series::Frame;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn regular_solution_at_zero() {
        let m = CYModel::builtin();
        let q0 = Rational::zero();
        let l = localize_operator(&m.operator, &Frame::Finite(q0.clone()), "x", &q0);
        let b = frobenius_basis(&l, 6).unwrap();
        let w0 = b.solution(0, 0).unwrap();
        assert!(w0.is_log_free());
        assert_eq!(w0.part(0).truncate(5), TruncatedSeries::from_ints("x", 0, &[1, 5, 109, 3317, 121501], 5));
        let w1 = b.solution(0, 1).unwrap();
        assert_eq!(w1.part(1), w0.part(0));
        assert_eq!(w1.part(0).coeff(1), Rational::from(14));
        assert_eq!(w1.part(0).coeff(2), Rational::from(357));
    }

    #[test]
    fn regular_solution_at_infinity() {
        let m = CYModel::builtin();
        let q0 = Rational::zero();
        let l = localize_operator(&m.operator, &Frame::Infinity, "z", &q0);
        let b = frobenius_basis(&l, 6).unwrap();
        let w0 = b.solution(1, 0).unwrap();
        assert_eq!(w0.part(0).truncate(5), TruncatedSeries::from_ints("z", 1, &[1, 17, 1549, 215585], 5));
    }

    #[test]
    fn apparent_point_solutions() {
        let m = CYModel::builtin();
        let q0 = Rational::zero();
        let l = localize_operator(&m.operator, &Frame::Finite(Rational::from(3)), "s", &q0);
        let b = frobenius_basis(&l, 8).unwrap();
        let w0 = b.solution(0, 0).unwrap();
        let w1 = b.solution(1, 0).unwrap();
        assert!(w0.is_log_free() && w1.is_log_free());
        assert_eq!(w0.part(0).coeff(1), Rational::zero());
        assert_eq!(w0.part(0).coeff(2), q("-1/42"));
        assert_eq!(w1.part(0).coeff(2), q("-8/21"));
        for k in [3, 4] {
            assert!(w0.part(0).coeff(k).is_zero());
            assert!(w1.part(0).coeff(k).is_zero());
        }
    }

    #[test]
    fn normalize_is_idempotent() {
        let m = CYModel::builtin();
        let q0 = Rational::zero();
        let l = localize_operator(&m.operator, &Frame::Finite(q0.clone()), "x", &q0);
        let b = frobenius_basis(&l, 6).unwrap();
        let mixed = FrobeniusBasis {
            indices: b.indices.clone(),
            labels: b.labels.clone(),
            solutions: vec![
                b.solutions[0].add(&b.solutions[1]),
                b.solutions[1].scale(&Rational::from(2)),
                b.solutions[2].sub(&b.solutions[0]),
                b.solutions[3].clone(),
            ],
        };
        let n1 = normalize_frobenius(&mixed).unwrap();
        let n2 = normalize_frobenius(&n1).unwrap();
        assert_eq!(n1.solutions, b.solutions);
        assert_eq!(n2.solutions, n1.solutions);
    }

    #[test]
    fn singular_combination_rejected() {
        let m = CYModel::builtin();
        let q0 = Rational::zero();
        let l = localize_operator(&m.operator, &Frame::Finite(q0.clone()), "x", &q0);
        let mut b = frobenius_basis(&l, 6).unwrap();
        b.solutions[1] = b.solutions[0].clone();
        assert!(matches!(normalize_frobenius(&b), Err(PfError::Singular)));
    }
}
