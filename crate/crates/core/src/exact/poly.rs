use super::{ArithError, Field, Rational};
use std::fmt;

/// Dense univariate polynomial, coefficients from low to high degree.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
/// `zero` is a prototype element that carries the coefficient context.
#[derive(Clone, PartialEq)]
pub struct Poly<C: Field> {
    coeffs: Vec<C>,
    zero: C,
}

impl<C: Field> Poly<C> {
    pub fn new(coeffs: Vec<C>, zero: C) -> Self {
        let zero = zero.zero_like();
        let mut p = Poly { coeffs, zero };
        p.trim();
        p
    }

    pub fn zero(proto: &C) -> Self {
        Poly { coeffs: Vec::new(), zero: proto.zero_like() }
    }

    pub fn one(proto: &C) -> Self {
        Poly::constant(proto.one_like())
    }

    pub fn constant(c: C) -> Self {
        let zero = c.zero_like();
        Poly::new(vec![c], zero)
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let zero = c.zero_like();
        let mut v = vec![zero.clone(); k];
        v.push(c);
        Poly::new(v, zero)
    }

    /// `x - c`
    pub fn linear_root(c: &C) -> Self {
        Poly::new(vec![c.neg(), c.one_like()], c.zero_like())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn proto(&self) -> &C {
        &self.zero
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), zero: self.zero.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j].add_mul(a, b);
            }
        }
        Poly::new(v, self.zero.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), self.zero.clone())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul_rational(r)).collect(), self.zero.clone())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v, zero: self.zero.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one(&self.zero);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_rational(&Rational::from(i as i64)))
            .collect();
        Poly::new(v, self.zero.clone())
    }

    /// `x d/dx`
    pub fn theta(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul_rational(&Rational::from(i as i64)))
            .collect();
        Poly::new(v, self.zero.clone())
    }

    /// The polynomial `p(x + c)`.
    pub fn taylor_shift(&self, c: &C) -> Self {
        // Horner in the shifted variable.
        let lin = Poly::new(vec![c.clone(), c.one_like()], self.zero.clone());
        let mut acc = Poly::zero(&self.zero);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(a.clone()));
        }
        acc
    }

    /// `x^deg * p(1/x)` for a given `deg >= degree`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut v = vec![self.zero.clone(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[deg - i] = c.clone();
        }
        Poly::new(v, self.zero.clone())
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ArithError> {
        let dl = d.leading().ok_or(ArithError::DivisionByZero)?;
        let dinv = dl.inv()?;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Poly::zero(&self.zero), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&dinv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = c.mul(dj);
                r[k + j].sub_assign(&t);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q, self.zero.clone()), Poly::new(r, self.zero.clone())))
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let li = l.inv().expect("nonzero leading coefficient");
                self.scale(&li)
            }
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let z = &self.zero;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(z), Poly::zero(z));
        let (mut t0, mut t1) = (Poly::zero(z), Poly::one(z));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv().expect("nonzero");
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    pub fn map<D: Field>(&self, proto: &D, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect(), proto.zero_like())
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains(['+', ' ']) || (cs[1..].contains('-')) { format!("({cs})") } else { cs };
            terms.push(match i {
                0 => cs,
                1 => format!("{cs}*{var}"),
                _ => format!("{cs}*{var}^{i}"),
            });
        }
        terms.join(" + ")
    }
}

impl Poly<Rational> {
    pub fn from_ints(v: &[i64]) -> Self {
        Poly::new(v.iter().map(|&c| Rational::from(c)).collect(), Rational::zero())
    }

    pub fn from_rationals(v: Vec<Rational>) -> Self {
        Poly::new(v, Rational::zero())
    }

    /// `x`
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// Clears denominators: returns `(c, p)` with `self = c * p`, `p` having
    /// coprime integer coefficients and positive leading coefficient.
    pub fn primitive_part(&self) -> (Rational, Self) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut den = rug::Integer::from(1);
        for c in &self.coeffs {
            den.lcm_mut(c.denom());
        }
        let mut g = rug::Integer::new();
        for c in &self.coeffs {
            let n = rug::Integer::from(c.numer() * &den) / c.denom();
            g.gcd_mut(&n);
        }
        if self.leading().unwrap().signum() < 0 {
            g = -g;
        }
        let content = Rational::new(g, den).unwrap();
        let inv = content.recip().unwrap();
        (content, self.scale(&inv))
    }
}

impl<C: Field> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl<C: Field> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.fmt_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly<Rational> {
        Poly::from_ints(v)
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let g = a.gcd(&p(&[1, 2, 1]));
        assert_eq!(g, b);
    }

    #[test]
    fn taylor_shift_evaluates() {
        let dis = p(&[1, -57, -289, 1]);
        let shifted = dis.taylor_shift(&Rational::from(3));
        assert_eq!(shifted.coeff(0), Rational::from(-2744));
        assert_eq!(shifted.eval(&Rational::from(-3)), Rational::from(1));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[1, -57, -289, 1]);
        let b = p(&[0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, p(&[1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let a = Poly::from_rationals(vec![Rational::frac(1, 2), Rational::frac(-3, 4)]);
        let (c, pp) = a.primitive_part();
        assert_eq!(pp, p(&[-2, 3]));
        assert_eq!(c, Rational::frac(-1, 4));
    }
}
