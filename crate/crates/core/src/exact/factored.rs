use super::{ArithError, Field, Poly, Rational, RationalFunction};
use rug::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// A fixed set of monic, pairwise coprime integer polynomials that may
/// appear in denominators.
#[derive(Debug, PartialEq, Eq)]
pub struct FactorBasis {
    var: String,
    factors: Vec<Vec<Integer>>,
    names: Vec<String>,
}

impl FactorBasis {
    pub fn new(var: &str, factors: &[(&str, Poly<Rational>)]) -> Result<Arc<Self>, ArithError> {
        let mut out = Vec::new();
        for (name, f) in factors {
            if f.degree().unwrap_or(0) == 0 || !f.leading().unwrap().is_one() {
                return Err(ArithError::Parse(format!("factor {name} is not monic of positive degree")));
            }
            let coeffs: Option<Vec<Integer>> = f.coeffs().iter().map(|c| c.to_integer()).collect();
            out.push(coeffs.ok_or_else(|| ArithError::Parse(format!("factor {name} is not integral")))?);
        }
        for i in 0..factors.len() {
            for j in 0..i {
                if factors[i].1.gcd(&factors[j].1).degree() != Some(0) {
                    return Err(ArithError::Parse(format!("factors {} and {} share a root", factors[i].0, factors[j].0)));
                }
            }
        }
        Ok(Arc::new(FactorBasis {
            var: var.to_string(),
            factors: out,
            names: factors.iter().map(|(n, _)| n.to_string()).collect(),
        }))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn factor(&self, i: usize) -> Poly<Rational> {
        zpoly_to_poly(&self.factors[i])
    }
}

fn zpoly_to_poly(p: &[Integer]) -> Poly<Rational> {
    Poly::from_rationals(p.iter().map(|c| Rational::from(c.clone())).collect())
}

fn ztrim(p: &mut Vec<Integer>) {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
}

fn zmul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `s*a + t*b`
fn zlincomb(s: &Integer, a: &[Integer], t: &Integer, b: &[Integer]) -> Vec<Integer> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut c = Integer::new();
        if let Some(x) = a.get(k) {
            c += s * x;
        }
        if let Some(y) = b.get(k) {
            c += t * y;
        }
        out.push(c);
    }
    ztrim(&mut out);
    out
}

/// Quotient by a monic divisor when the division is exact.
fn zdiv_exact(p: &[Integer], d: &[Integer]) -> Option<Vec<Integer>> {
    let dd = d.len() - 1;
    if p.len() < d.len() {
        return None;
    }
    let mut r: Vec<Integer> = p.to_vec();
    let mut q = vec![Integer::new(); p.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c != 0 {
            for (j, dj) in d.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
        }
        q[k] = c;
    }
    if r[..dd].iter().all(|c| *c == 0) {
        Some(q)
    } else {
        None
    }
}

fn ztheta(p: &[Integer]) -> Vec<Integer> {
    let mut out: Vec<Integer> = p.iter().enumerate().map(|(k, c)| Integer::from(c * k as u64)).collect();
    ztrim(&mut out);
    out
}

/// Split off the content so that the rest is primitive with positive leading coefficient.
fn zprimitive(mut p: Vec<Integer>) -> (Integer, Vec<Integer>) {
    ztrim(&mut p);
    if p.is_empty() {
        return (Integer::new(), p);
    }
    let mut g = Integer::new();
    for c in &p {
        g.gcd_mut(c);
        if g == 1 {
            break;
        }
    }
    if p.last().unwrap().cmp0() == std::cmp::Ordering::Less {
        g = -g;
    }
    if g != 1 {
        for c in p.iter_mut() {
            c.div_exact_mut(&g);
        }
    }
    (g, p)
}

/// `content * prim / prod f_i^exps[i]` over a fixed factor basis.
///
/// `prim` is a primitive integer polynomial with positive leading coefficient,
/// and no basis factor with positive exponent divides it.
#[derive(Clone)]
pub struct FactoredFraction {
    content: Rational,
    prim: Vec<Integer>,
    exps: Vec<u32>,
    basis: Arc<FactorBasis>,
}

impl PartialEq for FactoredFraction {
    fn eq(&self, other: &Self) -> bool {
        self.content == other.content && self.prim == other.prim && self.exps == other.exps
    }
}

impl FactoredFraction {
    pub fn zero(basis: &Arc<FactorBasis>) -> Self {
        FactoredFraction { content: Rational::zero(), prim: Vec::new(), exps: vec![0; basis.len()], basis: basis.clone() }
    }

    pub fn constant(basis: &Arc<FactorBasis>, c: Rational) -> Self {
        if c.is_zero() {
            return FactoredFraction::zero(basis);
        }
        FactoredFraction { content: c, prim: vec![Integer::from(1)], exps: vec![0; basis.len()], basis: basis.clone() }
    }

    pub fn one(basis: &Arc<FactorBasis>) -> Self {
        FactoredFraction::constant(basis, Rational::one())
    }

    pub fn from_int(basis: &Arc<FactorBasis>, n: i64) -> Self {
        FactoredFraction::constant(basis, Rational::from(n))
    }

    pub fn from_poly(basis: &Arc<FactorBasis>, p: &Poly<Rational>) -> Self {
        FactoredFraction::with_denominator(basis, p, vec![0; basis.len()])
    }

    /// `p / prod f_i^exps[i]`
    pub fn with_denominator(basis: &Arc<FactorBasis>, p: &Poly<Rational>, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), basis.len());
        if p.is_zero() {
            return FactoredFraction::zero(basis);
        }
        let (c, pp) = p.primitive_part();
        let prim: Vec<Integer> = pp.coeffs().iter().map(|x| x.to_integer().expect("primitive part is integral")).collect();
        let mut out = FactoredFraction { content: c, prim, exps, basis: basis.clone() };
        out.normalize();
        out
    }

    /// `f_i^e` for any integer `e`.
    pub fn basis_power(basis: &Arc<FactorBasis>, i: usize, e: i32) -> Self {
        let mut exps = vec![0; basis.len()];
        let prim = if e >= 0 {
            let mut p = vec![Integer::from(1)];
            for _ in 0..e {
                p = zmul(&p, &basis.factors[i]);
            }
            p
        } else {
            exps[i] = (-e) as u32;
            vec![Integer::from(1)]
        };
        FactoredFraction { content: Rational::one(), prim, exps, basis: basis.clone() }
    }

    pub fn basis(&self) -> &Arc<FactorBasis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.prim.is_empty()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn numerator(&self) -> Poly<Rational> {
        zpoly_to_poly(&self.prim).scale(&self.content)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        (self.prim.len() == 1 && self.exps.iter().all(|&e| e == 0)).then(|| self.content.clone())
    }

    fn normalize(&mut self) {
        if self.prim.is_empty() {
            self.content = Rational::zero();
            self.exps.iter_mut().for_each(|e| *e = 0);
            return;
        }
        for i in 0..self.exps.len() {
            while self.exps[i] > 0 {
                match zdiv_exact(&self.prim, &self.basis.factors[i]) {
                    Some(q) => {
                        self.prim = q;
                        self.exps[i] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    fn lifted(&self, target: &[u32]) -> Vec<Integer> {
        let mut p = self.prim.clone();
        for (i, (&t, &e)) in target.iter().zip(&self.exps).enumerate() {
            for _ in e..t {
                p = zmul(&p, &self.basis.factors[i]);
            }
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let target: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let a = self.lifted(&target);
        let b = other.lifted(&target);
        let (na, da) = (self.content.numer(), self.content.denom());
        let (nb, db) = (other.content.numer(), other.content.denom());
        let g = Integer::from(na.gcd_ref(nb));
        let l = Integer::from(da.lcm_ref(db));
        let s = Integer::from(na / &g) * Integer::from(&l / da);
        let t = Integer::from(nb / &g) * Integer::from(&l / db);
        let (c, prim) = zprimitive(zlincomb(&s, &a, &t, &b));
        if prim.is_empty() {
            return FactoredFraction::zero(&self.basis);
        }
        let content = Rational::new(g * c, l).expect("nonzero lcm");
        let mut out = FactoredFraction { content, prim, exps: target, basis: self.basis.clone() };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.content = -&out.content;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return FactoredFraction::zero(&self.basis);
        }
        let mut out = self.clone();
        out.content = &out.content * c;
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FactoredFraction::zero(&self.basis);
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        let mut out = FactoredFraction {
            content: &self.content * &other.content,
            prim: zmul(&self.prim, &other.prim),
            exps,
            basis: self.basis.clone(),
        };
        out.normalize();
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FactoredFraction::one(&self.basis);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse, available when the numerator is a product of basis factors.
    pub fn try_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let mut p = self.prim.clone();
        let mut num_exps = vec![0u32; self.exps.len()];
        for (i, f) in self.basis.factors.iter().enumerate() {
            while p.len() > 1 {
                match zdiv_exact(&p, f) {
                    Some(q) => {
                        p = q;
                        num_exps[i] += 1;
                    }
                    None => break,
                }
            }
        }
        if p.len() != 1 {
            return Err(ArithError::NotInvertible);
        }
        let mut prim = vec![Integer::from(1)];
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                prim = zmul(&prim, &self.basis.factors[i]);
            }
        }
        let content = Rational::from(p[0].clone()) * &self.content;
        Ok(FactoredFraction { content: content.recip()?, prim, exps: num_exps, basis: self.basis.clone() })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.try_inv()?))
    }

    /// var * d/dvar
    pub fn theta(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let active: Vec<usize> = (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect();
        let mut all = vec![Integer::from(1)];
        for &i in &active {
            all = zmul(&all, &self.basis.factors[i]);
        }
        let mut num = zmul(&ztheta(&self.prim), &all);
        for &i in &active {
            let mut others = vec![Integer::from(1)];
            for &j in &active {
                if j != i {
                    others = zmul(&others, &self.basis.factors[j]);
                }
            }
            let term = zmul(&zmul(&self.prim, &ztheta(&self.basis.factors[i])), &others);
            num = zlincomb(&Integer::from(1), &num, &Integer::from(-(self.exps[i] as i64)), &term);
        }
        let (c, prim) = zprimitive(num);
        if prim.is_empty() {
            return FactoredFraction::zero(&self.basis);
        }
        let mut exps = self.exps.clone();
        for &i in &active {
            exps[i] += 1;
        }
        let mut out = FactoredFraction { content: &self.content * &Rational::from(c), prim, exps, basis: self.basis.clone() };
        out.normalize();
        out
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, ArithError> {
        let horner = |p: &[Integer]| {
            let mut acc = Rational::zero();
            for c in p.iter().rev() {
                acc = &(&acc * x) + &Rational::from(c.clone());
            }
            acc
        };
        let mut den = Rational::one();
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                let v = horner(&self.basis.factors[i]);
                if v.is_zero() {
                    return Err(ArithError::Pole(format!("{}={}", self.basis.var, x)));
                }
                den = &den * &v.pow_i(e as i32)?;
            }
        }
        Ok(&(&horner(&self.prim) * &self.content) / &den)
    }

    pub fn denominator(&self) -> Poly<Rational> {
        let mut d = vec![Integer::from(1)];
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                d = zmul(&d, &self.basis.factors[i]);
            }
        }
        zpoly_to_poly(&d)
    }

    pub fn to_ratfn(&self) -> RationalFunction {
        RationalFunction::new(&self.basis.var, self.numerator(), self.denominator()).expect("nonzero denominator")
    }

    /// Fails unless the denominator splits over the basis.
    pub fn from_ratfn(basis: &Arc<FactorBasis>, f: &RationalFunction) -> Result<Self, ArithError> {
        let num = FactoredFraction::from_poly(basis, f.numer());
        let den = FactoredFraction::from_poly(basis, f.denom());
        num.try_div(&den)
    }

    pub fn to_serial(&self) -> FactoredSerial {
        FactoredSerial { num: self.numerator().coeffs().to_vec(), exps: self.exps.clone() }
    }

    pub fn from_serial(basis: &Arc<FactorBasis>, s: &FactoredSerial) -> Result<Self, ArithError> {
        if s.exps.len() != basis.len() {
            return Err(ArithError::Parse("exponent vector length".into()));
        }
        Ok(FactoredFraction::with_denominator(basis, &Poly::from_rationals(s.num.clone()), s.exps.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactoredSerial {
    pub num: Vec<Rational>,
    pub exps: Vec<u32>,
}

impl fmt::Display for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator().fmt_var(&self.basis.var);
        let dens: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.basis.names[i].clone() } else { format!("{}^{}", self.basis.names[i], e) })
            .collect();
        if dens.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", dens.join("*"))
        }
    }
}

impl fmt::Debug for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis() -> Arc<FactorBasis> {
        FactorBasis::new(
            "x",
            &[
                ("x", Poly::from_ints(&[0, 1])),
                ("(x-3)", Poly::from_ints(&[-3, 1])),
                ("dis", Poly::from_ints(&[1, -57, -289, 1])),
            ],
        )
        .unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new("x", Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    #[test]
    fn agrees_with_rational_functions() {
        let b = basis();
        // 14(3-x)/dis and 1/(x(x-3)^2)
        let f = rf(&[42, -14], &[1, -57, -289, 1]);
        let g = rf(&[1], &[0, 9, -6, 1]);
        let ff = FactoredFraction::from_ratfn(&b, &f).unwrap();
        let gg = FactoredFraction::from_ratfn(&b, &g).unwrap();
        assert_eq!(ff.add(&gg).to_ratfn(), f.try_add(&g).unwrap());
        assert_eq!(ff.mul(&gg).to_ratfn(), f.try_mul(&g).unwrap());
        assert_eq!(ff.theta().to_ratfn(), f.theta());
        assert_eq!(gg.theta().to_ratfn(), g.theta());
        assert_eq!(ff.try_div(&gg).unwrap().to_ratfn(), f.try_div(&g).unwrap());
    }

    #[test]
    fn cancellation_normalizes() {
        let b = basis();
        let xm3 = FactoredFraction::basis_power(&b, 1, 1);
        let inv = FactoredFraction::basis_power(&b, 1, -1);
        assert_eq!(xm3.mul(&inv), FactoredFraction::one(&b));
        let z = xm3.sub(&xm3);
        assert!(z.is_zero());
        assert_eq!(z, FactoredFraction::zero(&b));
    }

    #[test]
    fn inverse_needs_basis_numerator() {
        let b = basis();
        let f = FactoredFraction::from_poly(&b, &Poly::from_ints(&[1, 1]));
        assert_eq!(f.try_inv().unwrap_err(), ArithError::NotInvertible);
        let g = FactoredFraction::from_poly(&b, &Poly::from_ints(&[0, -6, 2]));
        let gi = g.try_inv().unwrap();
        assert_eq!(gi.mul(&g), FactoredFraction::one(&b));
    }

    #[test]
    fn eval_and_pole() {
        let b = basis();
        let f = FactoredFraction::from_ratfn(&b, &rf(&[42, -14], &[1, -57, -289, 1])).unwrap();
        assert_eq!(f.eval(&Rational::zero()).unwrap(), Rational::from(42));
        let g = FactoredFraction::basis_power(&b, 1, -2);
        assert!(matches!(g.eval(&Rational::from(3)), Err(ArithError::Pole(_))));
    }

    #[test]
    fn rejects_non_coprime_basis() {
        let r = FactorBasis::new("x", &[("a", Poly::from_ints(&[-1, 1])), ("b", Poly::from_ints(&[-1, 0, 1]))]);
        assert!(r.is_err());
    }
}
