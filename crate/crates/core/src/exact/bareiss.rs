use super::Rational;
use rug::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinSolveError {
    #[error("row {row} is inconsistent with the rows before it")]
    Inconsistent { row: usize },
    #[error("rank {rank} with {unknowns} unknowns (nullity {})", unknowns - rank)]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    Shape { row: usize, len: usize, expected: usize },
}

/// Fraction-free row echelon form of `[A | b]` over the integers.
#[derive(Debug, Clone)]
pub struct Echelon {
    m: Vec<Vec<Integer>>,
    /// original index of each echelon row
    origin: Vec<usize>,
    pivots: Vec<usize>,
    unknowns: usize,
}

fn integer_row(a: &[Rational], b: &Rational) -> Vec<Integer> {
    let mut l = Integer::from(1);
    for x in a.iter().chain(std::iter::once(b)) {
        l.lcm_mut(x.denom());
    }
    a.iter()
        .chain(std::iter::once(b))
        .map(|x| Integer::from(x.numer() * Integer::from(&l / x.denom())))
        .collect()
}

impl Echelon {
    /// Bareiss elimination. The pivot in each column is the entry of
    /// smallest bit length, ties going to the earliest row.
    pub fn new(a: &[Vec<Rational>], b: &[Rational]) -> Result<Self, LinSolveError> {
        let n = a.first().map_or(0, |r| r.len());
        for (i, r) in a.iter().enumerate() {
            if r.len() != n {
                return Err(LinSolveError::Shape { row: i, len: r.len(), expected: n });
            }
        }
        let mut m: Vec<Vec<Integer>> = a.iter().zip(b).map(|(r, c)| integer_row(r, c)).collect();
        let mut origin: Vec<usize> = (0..m.len()).collect();
        let mut pivots = Vec::new();
        let mut prev = Integer::from(1);
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..m.len()).filter(|&i| m[i][col] != 0).min_by_key(|&i| (m[i][col].significant_bits(), i)) else {
                continue;
            };
            m.swap(r, p);
            origin.swap(r, p);
            let (head, tail) = m.split_at_mut(r + 1);
            let pr = &head[r];
            for row in tail.iter_mut() {
                for j in (col + 1)..=n {
                    let v = Integer::from(&pr[col] * &row[j]) - Integer::from(&row[col] * &pr[j]);
                    row[j] = v.div_exact(&prev);
                }
                row[col] = Integer::new();
            }
            prev = m[r][col].clone();
            pivots.push(col);
            r += 1;
        }
        Ok(Echelon { m, origin, pivots, unknowns: n })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Original index of the first zero row with a nonzero right-hand side.
    pub fn inconsistent_row(&self) -> Option<usize> {
        let n = self.unknowns;
        (self.rank()..self.m.len()).find(|&i| self.m[i][n] != 0).map(|i| self.origin[i])
    }

    pub fn solve(&self) -> Result<Vec<Rational>, LinSolveError> {
        if let Some(row) = self.inconsistent_row() {
            return Err(LinSolveError::Inconsistent { row });
        }
        let n = self.unknowns;
        if self.rank() < n {
            return Err(LinSolveError::Underdetermined { rank: self.rank(), unknowns: n });
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let row = &self.m[i];
            let mut acc = Rational::from_integer(row[n].clone());
            for j in (i + 1)..n {
                acc = acc - Rational::from_integer(row[j].clone()) * x[j].clone();
            }
            x[i] = acc.checked_div(&Rational::from_integer(row[i].clone())).expect("nonzero pivot");
        }
        Ok(x)
    }
}

/// The unique solution of `A x = b`.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, LinSolveError> {
    Echelon::new(a, b)?.solve()
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let b = vec![Rational::zero(); a.len()];
    Echelon::new(a, &b).map_or(0, |e| e.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect()
    }

    #[test]
    fn square_system() {
        let a = vec![vec![q(1, 2), q(1, 3)], vec![q(2, 1), q(-1, 5)]];
        let b = vec![q(1, 1), q(0, 1)];
        let x = solve_exact(&a, &b).unwrap();
        for (r, c) in a.iter().zip(&b) {
            assert_eq!(r[0].clone() * x[0].clone() + r[1].clone() * x[1].clone(), *c);
        }
    }

    #[test]
    fn overdetermined_and_degenerate() {
        let a = mat(&[&[1, 1], &[2, 2], &[1, -1]]);
        assert_eq!(solve_exact(&a, &[q(2, 1), q(4, 1), q(0, 1)]).unwrap(), vec![q(1, 1), q(1, 1)]);
        assert_eq!(solve_exact(&a, &[q(2, 1), q(5, 1), q(0, 1)]), Err(LinSolveError::Inconsistent { row: 1 }));
        let d = mat(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_exact(&d, &[q(1, 1), q(2, 1)]), Err(LinSolveError::Underdetermined { rank: 1, unknowns: 2 }));
        assert_eq!(rank(&mat(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])), 2);
    }
}
