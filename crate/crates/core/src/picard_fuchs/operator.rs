use super::PfError;
use crate::exact::{Field, Poly, Rational};
use crate::series::{Frame, LogSeries, TruncatedSeries};

/// `sum_k coeffs[k](x) theta_x^k` with polynomial coefficients over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaOperator {
    coeffs: Vec<Poly<Rational>>,
}

impl ThetaOperator {
    pub fn new(coeffs: Vec<Poly<Rational>>) -> Result<Self, PfError> {
        if coeffs.last().map_or(true, |c| c.is_zero()) {
            return Err(PfError::Model("operator has vanishing leading coefficient".into()));
        }
        Ok(ThetaOperator { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly<Rational> {
        &self.coeffs[k]
    }

    /// Highest power of `x` among the coefficients.
    pub fn x_degree(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    /// `sum_k p_k(x) theta_x^k w` for `w` given in the local coordinate of `frame`.
    pub fn apply<C: Field>(&self, w: &LogSeries<C>, frame: &Frame<C>) -> LogSeries<C> {
        let proto = w.parts()[0].proto().clone();
        let mut acc: Option<LogSeries<C>> = None;
        let mut tw = w.clone();
        for (k, p) in self.coeffs.iter().enumerate() {
            if k > 0 {
                tw = tw.theta_apply(frame);
            }
            if p.is_zero() {
                continue;
            }
            let pc = p.map(&proto, |c| proto.from_rational_like(c));
            let (offset, local) = match frame {
                Frame::Finite(c) => (0, pc.taylor_shift(c)),
                Frame::Infinity => {
                    let d = self.x_degree();
                    (-(d as i64), pc.reversed(d))
                }
            };
            let parts: Vec<_> = tw.parts().iter().map(|s| s.mul_exact(offset, local.coeffs())).collect();
            let term = LogSeries::new(parts).unwrap();
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.unwrap()
    }
}

/// Local form `sum_i s^i l_i(delta)` with `delta = s d/ds`.
#[derive(Debug, Clone)]
pub struct LocalOperator<C: Field> {
    pub var: String,
    pub frame: Frame<C>,
    /// `rows[i]` is `l_i` as a polynomial in `delta`.
    pub rows: Vec<Poly<C>>,
}

fn falling<C: Field>(proto: &C, j: usize) -> Poly<C> {
    let mut p = Poly::one(proto);
    for i in 0..j {
        p = p.mul(&Poly::linear_root(&proto.from_int_like(i as i64)));
    }
    p
}

/// Rewrite the operator around `x = c` (with `s = x - c`) or around infinity (`s = 1/x`).
pub fn localize_operator<C: Field>(op: &ThetaOperator, frame: &Frame<C>, var: &str, proto: &C) -> LocalOperator<C> {
    let n = op.order();
    let lift = |p: &Poly<Rational>| p.map(proto, |c| proto.from_rational_like(c));
    let rows = match frame {
        Frame::Infinity => {
            let d = op.x_degree();
            let minus_delta = Poly::new(vec![proto.zero_like(), proto.one_like().neg()], proto.zero_like());
            let mut rows = vec![Poly::zero(proto); d + 1];
            let mut dk = Poly::one(proto);
            for k in 0..=n {
                let rev = lift(op.coeff(k)).reversed(d);
                for (i, c) in rev.coeffs().iter().enumerate() {
                    rows[i] = rows[i].add(&dk.scale(c));
                }
                dk = dk.mul(&minus_delta);
            }
            rows
        }
        Frame::Finite(c) => {
            // theta_x^k = sum_j a[k][j](s) d^j with theta_x = (s + c) d/ds
            let sc = Poly::new(vec![c.clone(), proto.one_like()], proto.zero_like());
            let mut a: Vec<Poly<C>> = vec![Poly::one(proto)];
            let mut p_j: Vec<Poly<C>> = vec![Poly::zero(proto); n + 1];
            for k in 0..=n {
                let pk = lift(op.coeff(k)).taylor_shift(c);
                for (j, aj) in a.iter().enumerate() {
                    p_j[j] = p_j[j].add(&pk.mul(aj));
                }
                let mut next = vec![Poly::zero(proto); a.len() + 1];
                for (j, aj) in a.iter().enumerate() {
                    next[j] = next[j].add(&sc.mul(&aj.derivative()));
                    next[j + 1] = next[j + 1].add(&sc.mul(aj));
                }
                a = next;
            }
            let shift = p_j
                .iter()
                .enumerate()
                .filter_map(|(j, p)| p.valuation().map(|v| j as i64 - v as i64))
                .max()
                .unwrap_or(0)
                .max(0) as usize;
            let mut rows: Vec<Poly<C>> = Vec::new();
            for (j, p) in p_j.iter().enumerate() {
                let f = falling(proto, j);
                // s^shift p_j(s) d^j = (s^(shift - j) p_j(s)) * falling(delta, j)
                for (e, c) in p.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let i = e + shift - j;
                    while rows.len() <= i {
                        rows.push(Poly::zero(proto));
                    }
                    rows[i] = rows[i].add(&f.scale(c));
                }
            }
            rows
        }
    };
    let mut rows = rows;
    while rows.len() > 1 && rows.last().unwrap().is_zero() {
        rows.pop();
    }
    LocalOperator { var: var.to_string(), frame: frame.clone(), rows }
}

impl<C: Field> LocalOperator<C> {
    pub fn indicial(&self) -> &Poly<C> {
        &self.rows[0]
    }

    /// True when the indicial polynomial has full degree, i.e. the point is not singular.
    pub fn is_ordinary(&self) -> bool {
        let n = self.rows.iter().filter_map(|r| r.degree()).max().unwrap_or(0);
        let roots: Vec<i64> = (0..n as i64).collect();
        self.indicial().degree() == Some(n)
            && roots.iter().all(|r| self.indicial().eval(&self.indicial().proto().from_int_like(*r)).is_zero())
    }

    /// `sum_i s^i l_i(delta) w`, the local operator applied directly.
    pub fn apply(&self, w: &LogSeries<C>) -> LogSeries<C> {
        let proto = w.parts()[0].proto().clone();
        let at0 = Frame::Finite(proto.zero_like());
        let mut acc: Option<LogSeries<C>> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let mut term: Option<LogSeries<C>> = None;
            let mut dw = w.clone();
            for (k, c) in row.coeffs().iter().enumerate() {
                if k > 0 {
                    dw = dw.theta_apply(&at0);
                }
                if !c.is_zero() {
                    let t = dw.scale(c);
                    term = Some(match term {
                        None => t,
                        Some(a) => a.add(&t),
                    });
                }
            }
            if let Some(t) = term {
                let t = LogSeries::new(t.parts().iter().map(|p| p.shift(i as i64)).collect()).unwrap();
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t),
                });
            }
        }
        acc.unwrap_or_else(|| LogSeries::from_series(TruncatedSeries::zero(&self.var, &proto, w.order())))
    }
}

/// Integer roots of the indicial polynomial with multiplicity, ascending.
pub fn indicial_roots<C: Field>(op: &LocalOperator<C>) -> Result<Vec<(i64, usize)>, PfError> {
    let mut p = op.indicial().clone();
    let proto = p.proto().clone();
    if p.is_zero() {
        return Err(PfError::NonIntegerIndices("indicial polynomial vanishes".into()));
    }
    let mut out = Vec::new();
    for r in -64i64..=64 {
        let lin = Poly::linear_root(&proto.from_int_like(r));
        let mut mult = 0;
        while p.degree().unwrap_or(0) > 0 {
            match p.exact_div(&lin) {
                Some(q) => {
                    p = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
    if p.degree().unwrap_or(0) > 0 {
        return Err(PfError::NonIntegerIndices(p.fmt_var("rho")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard_fuchs::CYModel;

    #[test]
    fn localize_at_zero_leading_nine() {
        let m = CYModel::builtin();
        let q0 = Rational::zero();
        let l = localize_operator(&m.operator, &Frame::Finite(q0.clone()), "x", &q0);
        assert_eq!(l.indicial(), &Poly::from_ints(&[0, 0, 0, 0, 9]));
        assert_eq!(indicial_roots(&l).unwrap(), vec![(0, 4)]);
    }

    #[test]
    fn indices_at_infinity_and_three() {
        let m = CYModel::builtin();
        let q0 = Rational::zero();
        let l = localize_operator(&m.operator, &Frame::Infinity, "z", &q0);
        assert_eq!(indicial_roots(&l).unwrap(), vec![(1, 4)]);
        let l3 = localize_operator(&m.operator, &Frame::Finite(Rational::from(3)), "s", &q0);
        assert_eq!(indicial_roots(&l3).unwrap(), vec![(0, 1), (1, 1), (3, 1), (4, 1)]);
    }

    #[test]
    fn ordinary_point_flagged() {
        let m = CYModel::builtin();
        let q0 = Rational::zero();
        let l = localize_operator(&m.operator, &Frame::Finite(Rational::from(1)), "s", &q0);
        assert!(l.is_ordinary());
        let l3 = localize_operator(&m.operator, &Frame::Finite(Rational::from(3)), "s", &q0);
        assert!(!l3.is_ordinary());
    }
}
