use crate::exact::{ArithError, FactorBasis, FactoredFraction, FactoredSerial, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponents of the four generators.
pub type Mono = [u16; 4];

/// Which generators a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    /// `A_1, B_1, B_2, B_3`
    AB,
    /// `u, v_1, v_2, v_3`
    UV,
}

impl Chart {
    pub fn names(&self) -> [&'static str; 4] {
        match self {
            Chart::AB => ["A1", "B1", "B2", "B3"],
            Chart::UV => ["u", "v1", "v2", "v3"],
        }
    }
}

/// A polynomial in four generators with coefficients in `Q(x)`.
#[derive(Clone, PartialEq)]
pub struct YYPoly {
    chart: Chart,
    basis: Arc<FactorBasis>,
    terms: BTreeMap<Mono, FactoredFraction>,
}

fn unit(i: usize) -> Mono {
    let mut m = [0; 4];
    m[i] = 1;
    m
}

fn mono_add(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

impl YYPoly {
    pub fn zero(basis: &Arc<FactorBasis>, chart: Chart) -> Self {
        YYPoly { chart, basis: basis.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FactoredFraction, chart: Chart) -> Self {
        let mut p = YYPoly::zero(c.basis(), chart);
        p.add_term([0; 4], c);
        p
    }

    pub fn from_rational(basis: &Arc<FactorBasis>, chart: Chart, c: Rational) -> Self {
        YYPoly::constant(FactoredFraction::constant(basis, c), chart)
    }

    pub fn one(basis: &Arc<FactorBasis>, chart: Chart) -> Self {
        YYPoly::from_rational(basis, chart, Rational::one())
    }

    pub fn gen(basis: &Arc<FactorBasis>, chart: Chart, i: usize) -> Self {
        let mut p = YYPoly::zero(basis, chart);
        p.add_term(unit(i), FactoredFraction::one(basis));
        p
    }

    pub fn monomial(c: FactoredFraction, chart: Chart, m: Mono) -> Self {
        let mut p = YYPoly::zero(c.basis(), chart);
        p.add_term(m, c);
        p
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn basis(&self) -> &Arc<FactorBasis> {
        &self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Mono, FactoredFraction> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> FactoredFraction {
        self.terms.get(m).cloned().unwrap_or_else(|| FactoredFraction::zero(&self.basis))
    }

    fn add_term(&mut self, m: Mono, c: FactoredFraction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = e.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.chart, other.chart, "chart mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        YYPoly { chart: self.chart, basis: self.basis.clone(), terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FactoredFraction) -> Self {
        if c.is_zero() {
            return YYPoly::zero(&self.basis, self.chart);
        }
        YYPoly { chart: self.chart, basis: self.basis.clone(), terms: self.terms.iter().map(|(m, t)| (*m, t.mul(c))).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&FactoredFraction::constant(&self.basis, r.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = YYPoly::zero(&self.basis, self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_add(ma, mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = YYPoly::one(&self.basis, self.chart);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m[i]).max().unwrap_or(0)
    }

    /// Coefficients of `gen_i^k` for `k = 0..=degree_in(i)`.
    pub fn split_var(&self, i: usize) -> Vec<YYPoly> {
        let mut out = vec![YYPoly::zero(&self.basis, self.chart); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            let mut r = *m;
            r[i] = 0;
            out[m[i] as usize].add_term(r, c.clone());
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = YYPoly::zero(&self.basis, self.chart);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut r = *m;
                r[i] -= 1;
                out.add_term(r, c.scale(&Rational::from(m[i] as i64)));
            }
        }
        out
    }

    /// The antiderivative in generator `i` without constant term.
    pub fn integrate(&self, i: usize) -> Self {
        let mut out = YYPoly::zero(&self.basis, self.chart);
        for (m, c) in &self.terms {
            let mut r = *m;
            r[i] += 1;
            out.add_term(r, c.scale(&Rational::frac(1, r[i] as i64)));
        }
        out
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    pub fn as_constant(&self) -> Option<FactoredFraction> {
        match self.terms.len() {
            0 => Some(FactoredFraction::zero(&self.basis)),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    /// Replace each generator by a polynomial (all in one common chart).
    pub fn substitute(&self, images: &[YYPoly; 4]) -> YYPoly {
        let chart = images[0].chart;
        let mut powers: Vec<Vec<YYPoly>> = (0..4).map(|_| vec![YYPoly::one(&self.basis, chart)]).collect();
        for (i, pw) in powers.iter_mut().enumerate() {
            for _ in 0..self.degree_in(i) {
                let next = pw.last().unwrap().mul(&images[i]);
                pw.push(next);
            }
        }
        let mut out = YYPoly::zero(&self.basis, chart);
        for (m, c) in &self.terms {
            let mut t = YYPoly::constant(c.clone(), chart);
            for i in 0..4 {
                if m[i] > 0 {
                    t = t.mul(&powers[i][m[i] as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// `theta_x` given the images of the generators.
    pub fn theta(&self, gen_theta: &[YYPoly; 4]) -> YYPoly {
        let mut out = YYPoly::zero(&self.basis, self.chart);
        for (m, c) in &self.terms {
            out.add_term(*m, c.theta());
        }
        for (i, tg) in gen_theta.iter().enumerate() {
            let d = self.partial(i);
            if !d.is_zero() {
                out = out.add(&d.mul(tg));
            }
        }
        out
    }

    /// Largest numerator degree and denominator exponent sum among the coefficients.
    pub fn size_report(&self) -> (usize, usize, u32) {
        let num = self.terms.values().filter_map(|c| c.numerator().degree()).max().unwrap_or(0);
        let den = self.terms.values().map(|c| c.exps().iter().sum::<u32>()).max().unwrap_or(0);
        (self.terms.len(), num, den)
    }
}

/// Plain-data form of a [`YYPoly`] for caching.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YYSerial {
    pub chart: Chart,
    pub terms: Vec<(Mono, FactoredSerial)>,
}

impl YYPoly {
    pub fn to_serial(&self) -> YYSerial {
        YYSerial { chart: self.chart, terms: self.terms.iter().map(|(m, c)| (*m, c.to_serial())).collect() }
    }

    pub fn from_serial(basis: &Arc<FactorBasis>, s: &YYSerial) -> Result<Self, ArithError> {
        let mut p = YYPoly::zero(basis, s.chart);
        for (m, c) in &s.terms {
            p.add_term(*m, FactoredFraction::from_serial(basis, c)?);
        }
        Ok(p)
    }
}

impl fmt::Display for YYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.chart.names();
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for i in 0..4 {
                match m[i] {
                    0 => {}
                    1 => write!(f, "*{}", names[i])?,
                    e => write!(f, "*{}^{}", names[i], e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for YYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YYPoly[{:?}]({})", self.chart, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    fn basis() -> Arc<FactorBasis> {
        FactorBasis::new("x", &[("x", Poly::x()), ("x-3", Poly::from_ints(&[-3, 1]))]).unwrap()
    }

    #[test]
    fn integrate_then_differentiate() {
        let b = basis();
        let g = |i| YYPoly::gen(&b, Chart::UV, i);
        let p = g(1).pow(3).add(&g(2).mul(&g(3))).scale(&FactoredFraction::basis_power(&b, 1, -2));
        for i in 0..4 {
            assert_eq!(p.integrate(i).partial(i), p);
        }
    }

    #[test]
    fn substitute_identity_and_split() {
        let b = basis();
        let g = |i| YYPoly::gen(&b, Chart::AB, i);
        let p = g(0).mul(&g(1)).add(&g(3).pow(2)).sub(&YYPoly::one(&b, Chart::AB));
        let ids = [g(0), g(1), g(2), g(3)];
        assert_eq!(p.substitute(&ids), p);
        let parts = p.split_var(3);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[2], YYPoly::one(&b, Chart::AB));
    }

    #[test]
    fn serial_round_trip() {
        let b = basis();
        let g = |i| YYPoly::gen(&b, Chart::UV, i);
        let p = g(1).pow(2).scale(&FactoredFraction::basis_power(&b, 1, -3)).sub(&g(3).scale_rational(&Rational::frac(5, 7)));
        let json = serde_json::to_string(&p.to_serial()).unwrap();
        let back = YYPoly::from_serial(&b, &serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn theta_leibniz() {
        let b = basis();
        let g = |i| YYPoly::gen(&b, Chart::AB, i);
        // theta of every generator equal to 1 gives the sum of partials
        let ones: [YYPoly; 4] = std::array::from_fn(|_| YYPoly::one(&b, Chart::AB));
        let p = g(0).pow(2).mul(&g(2));
        let expect = g(0).mul(&g(2)).scale_rational(&Rational::from(2)).add(&g(0).pow(2));
        assert_eq!(p.theta(&ones), expect);
    }
}
