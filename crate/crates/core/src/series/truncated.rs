use super::SeriesError;
use crate::exact::{Field, Poly, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Truncated Laurent series `sum_{n >= offset} c_n var^n + O(var^order)`.
///
/// Every coefficient from `offset` up to `order - 1` is known. A nonzero
/// series is stored with a nonzero leading coefficient; the zero series has
/// `offset == order` and no coefficients.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C: Field> {
    var: String,
    offset: i64,
    coeffs: Vec<C>,
    order: i64,
    zero: C,
}

impl<C: Field> TruncatedSeries<C> {
    /// Coefficients start at `offset`; entries missing below `order` are zero.
    pub fn new(var: &str, offset: i64, mut coeffs: Vec<C>, order: i64, proto: &C) -> Self {
        let zero = proto.zero_like();
        let len = (order - offset).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, zero.clone());
        let mut s = TruncatedSeries { var: var.to_string(), offset: offset.min(order), coeffs, order, zero };
        s.normalize();
        s
    }

    /// Order is one past the last given coefficient.
    pub fn from_coeffs(var: &str, offset: i64, coeffs: Vec<C>, proto: &C) -> Self {
        let order = offset + coeffs.len() as i64;
        TruncatedSeries::new(var, offset, coeffs, order, proto)
    }

    pub fn from_poly(var: &str, p: &Poly<C>, order: i64) -> Self {
        TruncatedSeries::new(var, 0, p.coeffs().to_vec(), order, p.proto())
    }

    pub fn zero(var: &str, proto: &C, order: i64) -> Self {
        TruncatedSeries::new(var, order, Vec::new(), order, proto)
    }

    pub fn constant(var: &str, c: C, order: i64) -> Self {
        let proto = c.zero_like();
        TruncatedSeries::new(var, 0, vec![c], order, &proto)
    }

    pub fn one(var: &str, proto: &C, order: i64) -> Self {
        TruncatedSeries::constant(var, proto.one_like(), order)
    }

    /// `c * var^k`
    pub fn monomial(var: &str, c: C, k: i64, order: i64) -> Self {
        let proto = c.zero_like();
        TruncatedSeries::new(var, k, vec![c], order, &proto)
    }

    pub fn variable(var: &str, proto: &C, order: i64) -> Self {
        TruncatedSeries::monomial(var, proto.one_like(), 1, order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn proto(&self) -> &C {
        &self.zero
    }

    /// Lowest stored exponent; equals `order` for the zero series.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Coefficient of `var^n`, `None` when `n` is at or beyond the order.
    pub fn get(&self, n: i64) -> Option<C> {
        if n >= self.order {
            None
        } else if n < self.offset {
            Some(self.zero.clone())
        } else {
            Some(self.coeffs[(n - self.offset) as usize].clone())
        }
    }

    /// Coefficient of `var^n`; panics when `n` is not known.
    pub fn coeff(&self, n: i64) -> C {
        self.get(n).unwrap_or_else(|| panic!("coefficient {}^{} beyond truncation order {}", self.var, n, self.order))
    }

    pub fn try_coeff(&self, n: i64) -> Result<C, SeriesError> {
        self.get(n).ok_or(SeriesError::Truncated { need: n + 1, have: self.order })
    }

    /// Dense coefficients of exponents `from..self.order`.
    pub fn dense_from(&self, from: i64) -> Vec<C> {
        (from..self.order).map(|n| self.coeff(n)).collect()
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        TruncatedSeries::new(&self.var, self.offset, self.coeffs.clone(), order, &self.zero)
    }

    /// Declares all unknown coefficients below `order` to be zero.
    pub(crate) fn pad_to(&self, order: i64) -> Self {
        if order <= self.order {
            return self.truncate(order);
        }
        let offset = if self.is_zero() { order } else { self.offset };
        TruncatedSeries::new(&self.var, offset.min(self.order), self.dense_from(offset.min(self.order)), order, &self.zero)
    }

    pub fn rename(&self, var: &str) -> Self {
        let mut s = self.clone();
        s.var = var.to_string();
        s
    }

    fn check_var(&self, other: &Self) -> Result<(), SeriesError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(SeriesError::VariableMismatch(self.var.clone(), other.var.clone()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let lo = self.offset.min(other.offset).min(order);
        let mut out: Vec<C> = Vec::with_capacity((order - lo) as usize);
        for n in lo..order {
            let mut c = self.coeff(n);
            c.add_assign(&other.coeff(n));
            out.push(c);
        }
        Ok(TruncatedSeries::new(&self.var, lo, out, order, &self.zero))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("series variable mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|x| x.mul_rational(r))
    }

    fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        TruncatedSeries::new(&self.var, self.offset, self.coeffs.iter().map(f).collect(), self.order, &self.zero)
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.offset += k;
        s.order += k;
        s
    }

    /// Add a constant `c * var^0`.
    pub fn add_constant(&self, c: &C) -> Self {
        self.add(&TruncatedSeries::constant(&self.var, c.clone(), self.order))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        let order = (self.order + other.offset).min(other.order + self.offset);
        if self.is_zero() || other.is_zero() {
            return Ok(TruncatedSeries::zero(&self.var, &self.zero, order));
        }
        let base = self.offset + other.offset;
        let n = (order - base).max(0) as usize;
        let mut out = vec![self.zero.clone(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j].add_mul(a, b);
            }
        }
        Ok(TruncatedSeries::new(&self.var, base, out, order, &self.zero))
    }

    /// Product with the exact Laurent polynomial `sum_i p[i] var^(offset + i)`.
    pub fn mul_exact(&self, offset: i64, p: &[C]) -> Self {
        let Some(lead) = p.iter().position(|c| !c.is_zero()) else {
            return TruncatedSeries::zero(&self.var, &self.zero, i64::MAX / 4);
        };
        let order = self.order + offset + lead as i64;
        let exact = TruncatedSeries::new(&self.var, offset, p.to_vec(), offset + p.len() as i64, &self.zero);
        if self.is_zero() {
            return TruncatedSeries::zero(&self.var, &self.zero, order);
        }
        let base = self.offset + exact.offset;
        let n = (order - base).max(0) as usize;
        let mut out = vec![self.zero.clone(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in exact.coeffs.iter().enumerate().take(n - i) {
                out[i + j].add_mul(a, b);
            }
        }
        TruncatedSeries::new(&self.var, base, out, order, &self.zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("series variable mismatch")
    }

    pub fn try_inv(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroLeading)?;
        let n = (self.order - v) as usize;
        let d0 = self.coeffs[0].inv().map_err(SeriesError::Arith)?;
        let mut d: Vec<C> = Vec::with_capacity(n);
        d.push(d0.clone());
        for k in 1..n {
            let mut acc = self.zero.clone();
            for i in 1..=k {
                acc.add_mul(&self.coeffs[i], &d[k - i]);
            }
            d.push(acc.mul(&d0).neg());
        }
        Ok(TruncatedSeries::new(&self.var, -v, d, -v + n as i64, &self.zero))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_var(other)?;
        self.try_mul(&other.try_inv()?)
    }

    /// Integer power; negative exponents need an invertible leading coefficient.
    pub fn powi(&self, e: i64) -> Result<Self, SeriesError> {
        if e == 0 {
            let order = match self.valuation() {
                Some(v) => self.order - v,
                None => return Err(SeriesError::ZeroLeading),
            };
            return Ok(TruncatedSeries::one(&self.var, &self.zero, order));
        }
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut p = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => p.clone(),
                    Some(a) => a.mul(&p),
                });
            }
            k >>= 1;
            if k > 0 {
                p = p.mul(&p);
            }
        }
        Ok(acc.unwrap())
    }

    /// d/dvar
    pub fn derivative(&self) -> Self {
        let out: Vec<C> =
            self.coeffs.iter().enumerate().map(|(i, c)| c.mul_rational(&Rational::from(self.offset + i as i64))).collect();
        TruncatedSeries::new(&self.var, self.offset - 1, out, self.order - 1, &self.zero)
    }

    /// var * d/dvar
    pub fn theta(&self) -> Self {
        self.derivative().shift(1)
    }

    /// `f(g)` for `g` of positive valuation. The result lives in `g`'s variable.
    pub fn compose(&self, g: &Self) -> Result<Self, SeriesError> {
        let v = g.valuation().ok_or(SeriesError::ZeroLeading)?;
        if v < 1 {
            return Err(SeriesError::ConstantTerm);
        }
        let mut order = self.order * v;
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.offset + i as i64;
            if k != 0 && !c.is_zero() {
                order = order.min((k - 1) * v + g.order);
            }
        }
        let mut acc = TruncatedSeries::zero(&g.var, &self.zero, order);
        if self.is_zero() {
            return Ok(acc);
        }
        let kmin = self.offset;
        let kmax = self.order - 1;
        let one = TruncatedSeries::one(&g.var, &self.zero, order);
        let mut pow = match kmin {
            0 => one.clone(),
            k if k < 0 => g.try_inv()?.powi(-k)?,
            k => g.powi(k)?,
        };
        for k in kmin..=kmax {
            let c = self.coeff(k);
            if !c.is_zero() {
                acc = acc.add(&pow.scale(&c).truncate(order));
            }
            if k < kmax {
                pow = if k == -1 { one.clone() } else { pow.mul(g).truncate(order) };
            }
        }
        Ok(acc.truncate(order))
    }

    /// The compositional inverse `g` with `f(g(y)) = y`, in the variable `var`.
    pub fn revert(&self, var: &str) -> Result<Self, SeriesError> {
        if self.valuation() != Some(1) {
            return Err(SeriesError::ZeroLinear);
        }
        let n = self.order;
        let c1 = self.coeffs[0].clone();
        let y = TruncatedSeries::variable(var, &self.zero, n);
        let fp = self.derivative();
        let mut g = TruncatedSeries::monomial(var, c1.inv().map_err(SeriesError::Arith)?, 1, 2.min(n));
        let mut prec = g.order;
        while prec < n {
            let next = (2 * prec).min(n);
            let gx = g.pad_to(next);
            let resid = self.compose(&gx)?.truncate(next).sub(&y.truncate(next));
            if resid.valuation().is_some_and(|r| r < prec) {
                return Err(SeriesError::Internal(format!("reversion step lost precision at {prec}")));
            }
            let corr = resid.try_div(&fp.compose(&gx)?)?;
            g = gx.sub(&corr).truncate(next);
            prec = next;
        }
        let check = self.compose(&g)?;
        if !check.sub(&y.truncate(check.order)).is_zero() {
            return Err(SeriesError::Internal("reversion failed recomposition".into()));
        }
        Ok(g)
    }

    /// exp(f) for f with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if self.valuation().is_some_and(|v| v < 1) {
            return Err(SeriesError::ConstantTerm);
        }
        let n = self.order.max(0) as usize;
        let f: Vec<C> = (0..n as i64).map(|k| self.coeff(k)).collect();
        let mut e: Vec<C> = Vec::with_capacity(n);
        if n > 0 {
            e.push(self.zero.one_like());
        }
        for m in 1..n {
            let mut acc = self.zero.clone();
            for k in 1..=m {
                if !f[k].is_zero() {
                    acc.add_mul(&f[k].mul_rational(&Rational::from(k as i64)), &e[m - k]);
                }
            }
            e.push(acc.mul_rational(&Rational::frac(1, m as i64)));
        }
        Ok(TruncatedSeries::new(&self.var, 0, e, self.order, &self.zero))
    }

    /// log(f) for f with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.valuation() != Some(0) || !self.coeffs[0].is_one() {
            return Err(SeriesError::Precondition("log needs constant term 1".into()));
        }
        let n = self.order as usize;
        let f = &self.coeffs;
        let mut l: Vec<C> = vec![self.zero.clone(); n];
        for m in 1..n {
            let mut acc = f[m].mul_rational(&Rational::from(m as i64));
            for k in 1..m {
                if !l[k].is_zero() {
                    acc.sub_assign(&l[k].mul_rational(&Rational::from(k as i64)).mul(&f[m - k]));
                }
            }
            l[m] = acc.mul_rational(&Rational::frac(1, m as i64));
        }
        Ok(TruncatedSeries::new(&self.var, 0, l, self.order, &self.zero))
    }

    /// `(v, c, u)` with `self = c * var^v * u` and `u = 1 + O(var)`.
    pub fn split_leading(&self) -> Result<(i64, C, Self), SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroLeading)?;
        let c = self.coeffs[0].clone();
        let ci = c.inv().map_err(SeriesError::Arith)?;
        Ok((v, c, self.shift(-v).scale(&ci)))
    }

    pub fn map<D: Field>(&self, proto: &D, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries::new(&self.var, self.offset, self.coeffs.iter().map(f).collect(), self.order, proto)
    }

    /// Serializable form `{variable, offset, truncation_order, coefficients}`.
    pub fn to_serial<S>(&self, f: impl Fn(&C) -> S) -> SeriesSerial<S> {
        SeriesSerial {
            variable: self.var.clone(),
            offset: self.offset,
            truncation_order: self.order,
            coefficients: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl TruncatedSeries<Rational> {
    pub fn from_ints(var: &str, offset: i64, v: &[i64], order: i64) -> Self {
        TruncatedSeries::new(var, offset, v.iter().map(|&c| Rational::from(c)).collect(), order, &Rational::zero())
    }

    pub fn from_serial(s: &SeriesSerial<Rational>) -> Self {
        TruncatedSeries::new(&s.variable, s.offset, s.coefficients.clone(), s.truncation_order, &Rational::zero())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSerial<S> {
    pub variable: String,
    pub offset: i64,
    pub truncation_order: i64,
    pub coefficients: Vec<S>,
}

impl<C: Field> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.offset + i as i64;
            let cs = c.to_string();
            let cs = if cs.contains(['+', ' ']) { format!("({cs})") } else { cs };
            terms.push(match k {
                0 => cs,
                1 => format!("{cs}*{}", self.var),
                _ => format!("{cs}*{}^{k}", self.var),
            });
        }
        terms.push(format!("O({}^{})", self.var, self.order));
        write!(f, "{}", terms.join(" + "))
    }
}

impl<C: Field> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64], order: i64) -> TruncatedSeries<Rational> {
        TruncatedSeries::from_ints("x", 0, v, order)
    }

    #[test]
    fn mul_one_plus_minus() {
        let p = s(&[1, 1], 5).mul(&s(&[1, -1], 5));
        assert_eq!(p, s(&[1, 0, -1], 5));
    }

    #[test]
    fn div_shifts_offset() {
        let q = s(&[0, 1, 1], 6).try_div(&s(&[0, 1], 6)).unwrap();
        assert_eq!(q.offset(), 0);
        assert_eq!(q.coeff(0), Rational::one());
        assert_eq!(q.coeff(1), Rational::one());
        assert_eq!(q.coeff(2), Rational::zero());
        assert_eq!(q.order(), 5);
    }

    #[test]
    fn zero_divisor_is_error() {
        let z = TruncatedSeries::zero("x", &Rational::zero(), 5);
        assert!(matches!(s(&[1], 5).try_div(&z), Err(SeriesError::ZeroLeading)));
    }

    #[test]
    fn compose_square() {
        let f = TruncatedSeries::from_ints("x", 0, &[0, 0, 1], 8);
        let g = TruncatedSeries::from_ints("q", 0, &[0, 1, 1], 8);
        let h = f.compose(&g).unwrap();
        assert_eq!(h, TruncatedSeries::from_ints("q", 0, &[0, 0, 1, 2, 1], 8));
    }

    #[test]
    fn compose_laurent() {
        // 1/x composed with x = q/(1-q) is (1-q)/q
        let f = TruncatedSeries::from_ints("x", -1, &[1], 6);
        let g = TruncatedSeries::from_ints("q", 1, &[1, 1, 1, 1, 1, 1, 1], 8);
        let h = f.compose(&g).unwrap();
        assert_eq!(h.offset(), -1);
        assert_eq!(h.coeff(-1), Rational::one());
        assert_eq!(h.coeff(0), Rational::from(-1));
        for k in 1..h.order() {
            assert!(h.coeff(k).is_zero());
        }
    }

    #[test]
    fn revert_x_plus_x2() {
        let f = s(&[0, 1, 1], 6);
        let g = f.revert("q").unwrap();
        assert_eq!(g, TruncatedSeries::from_ints("q", 0, &[0, 1, -1, 2, -5, 14], 6));
    }

    #[test]
    fn revert_identity() {
        let g = s(&[0, 1], 7).revert("q").unwrap();
        assert_eq!(g, TruncatedSeries::from_ints("q", 1, &[1], 7));
    }

    #[test]
    fn revert_needs_linear_term() {
        assert!(matches!(s(&[0, 0, 1], 5).revert("q"), Err(SeriesError::ZeroLinear)));
    }

    #[test]
    fn exp_log() {
        let lg = s(&[1, 1], 6).log().unwrap();
        let expect: Vec<Rational> =
            ["0", "1", "-1/2", "1/3", "-1/4", "1/5"].iter().map(|t| t.parse().unwrap()).collect();
        assert_eq!(lg, TruncatedSeries::new("x", 0, expect, 6, &Rational::zero()));
        assert_eq!(lg.exp().unwrap(), s(&[1, 1], 6));
        let z = TruncatedSeries::zero("x", &Rational::zero(), 4);
        assert_eq!(z.exp().unwrap(), s(&[1], 4));
        assert!(s(&[2, 1], 4).log().is_err());
        assert!(s(&[1, 1], 4).exp().is_err());
    }

    #[test]
    fn powi_negative() {
        let f = s(&[0, 1, 1], 6);
        let g = f.powi(-2).unwrap();
        let one = g.mul(&f.powi(2).unwrap());
        assert!(one.sub(&s(&[1], one.order())).is_zero());
        assert_eq!(g.offset(), -2);
    }

    #[test]
    fn theta_monomial() {
        let f = TruncatedSeries::from_ints("x", 3, &[1], 8);
        assert_eq!(f.theta(), TruncatedSeries::from_ints("x", 3, &[3], 8));
    }

    #[test]
    fn truncation_is_pessimistic() {
        let a = s(&[1, 2, 3], 3);
        let b = s(&[1, 1, 1, 1, 1], 5);
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(a.mul(&b).order(), 3);
        assert!(a.get(3).is_none());
    }
}
