use super::{ArithError, Field, Poly, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Monic minimal polynomial `m(α)` defining the ring `ℚ[α]/(m)`.
#[derive(Debug, PartialEq, Eq)]
pub struct MinPoly {
    /// Integer coefficients, low to high, leading coefficient 1.
    coeffs: Vec<i64>,
    /// `reductions[k]` is `α^(n+k)` reduced to degree `< n`.
    reductions: Vec<Vec<Rational>>,
}

impl MinPoly {
    pub fn new(coeffs: Vec<i64>) -> Result<Arc<Self>, ArithError> {
        if coeffs.len() < 2 || *coeffs.last().unwrap() != 1 {
            return Err(ArithError::Parse(format!("minimal polynomial must be monic of degree >= 1: {coeffs:?}")));
        }
        let n = coeffs.len() - 1;
        // α^n = -(c_0 + c_1 α + ... + c_{n-1} α^{n-1})
        let mut cur: Vec<Rational> = coeffs[..n].iter().map(|&c| Rational::from(-c)).collect();
        let mut reductions = Vec::with_capacity(n.saturating_sub(1));
        for _ in 0..n.saturating_sub(1).max(1) {
            reductions.push(cur.clone());
            // multiply by α
            let top = cur[n - 1].clone();
            let mut next = vec![Rational::zero(); n];
            for i in 1..n {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..n {
                next[i] += &(&top * &Rational::from(-coeffs[i]));
            }
            cur = next;
        }
        Ok(Arc::new(MinPoly { coeffs, reductions }))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> Poly<Rational> {
        Poly::from_ints(&self.coeffs)
    }
}

/// Element of `ℚ[α]/(m(α))` as the reduced residue of degree `< deg m`.
#[derive(Clone)]
pub struct AlgebraicNumber {
    coeffs: Vec<Rational>,
    minpoly: Arc<MinPoly>,
}

impl AlgebraicNumber {
    pub fn new(mut coeffs: Vec<Rational>, minpoly: &Arc<MinPoly>) -> Self {
        let n = minpoly.degree();
        if coeffs.len() > n {
            return Self::reduce_poly(&Poly::from_rationals(coeffs), minpoly);
        }
        coeffs.resize(n, Rational::zero());
        AlgebraicNumber { coeffs, minpoly: minpoly.clone() }
    }

    pub fn from_rational(r: Rational, minpoly: &Arc<MinPoly>) -> Self {
        AlgebraicNumber::new(vec![r], minpoly)
    }

    /// The generator `α`.
    pub fn generator(minpoly: &Arc<MinPoly>) -> Self {
        AlgebraicNumber::new(vec![Rational::zero(), Rational::one()], minpoly)
    }

    pub fn reduce_poly(p: &Poly<Rational>, minpoly: &Arc<MinPoly>) -> Self {
        let n = minpoly.degree();
        let mut out = vec![Rational::zero(); n];
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < n {
                out[k] += c;
            } else {
                let red = Self::power_reduction(minpoly, k);
                for i in 0..n {
                    out[i] += &(c * &red[i]);
                }
            }
        }
        AlgebraicNumber { coeffs: out, minpoly: minpoly.clone() }
    }

    fn power_reduction(minpoly: &MinPoly, k: usize) -> Vec<Rational> {
        let n = minpoly.degree();
        if k - n < minpoly.reductions.len() {
            return minpoly.reductions[k - n].clone();
        }
        // Rare path for degrees beyond the cached table.
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = Rational::one();
        let (_, r) = Poly::from_rationals(v).div_rem(&minpoly.as_poly()).expect("monic");
        let mut out: Vec<Rational> = r.into_coeffs();
        out.resize(n, Rational::zero());
        out
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn minpoly(&self) -> &Arc<MinPoly> {
        &self.minpoly
    }

    pub fn as_poly(&self) -> Poly<Rational> {
        Poly::from_rationals(self.coeffs.clone())
    }

    fn same_field(&self, other: &Self) -> Result<(), ArithError> {
        if Arc::ptr_eq(&self.minpoly, &other.minpoly) || self.minpoly == other.minpoly {
            Ok(())
        } else {
            Err(ArithError::MinPolyMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(AlgebraicNumber { coeffs, minpoly: self.minpoly.clone() })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let n = self.minpoly.degree();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    Field::add_mul(&mut prod[i + j], a, b);
                }
            }
        }
        let mut out: Vec<Rational> = prod[..n].to_vec();
        for (k, c) in prod.iter().enumerate().skip(n) {
            if c.is_zero() {
                continue;
            }
            let red = &self.minpoly.reductions[k - n];
            for i in 0..n {
                Field::add_mul(&mut out[i], c, &red[i]);
            }
        }
        Ok(AlgebraicNumber { coeffs: out, minpoly: self.minpoly.clone() })
    }

    pub fn try_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero_elem() {
            return Err(ArithError::DivisionByZero);
        }
        let (g, s, _) = self.as_poly().ext_gcd(&self.minpoly.as_poly());
        if g.degree() != Some(0) {
            return Err(ArithError::NotInvertible);
        }
        Ok(AlgebraicNumber::reduce_poly(&s, &self.minpoly))
    }

    fn is_zero_elem(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Numerical value at a chosen real root of the minimal polynomial.
    pub fn eval_at_root(&self, root: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * root + c.to_f64())
    }

    pub fn to_serial(&self) -> AlgebraicSerial {
        AlgebraicSerial { coeffs: self.coeffs.clone(), minpoly: self.minpoly.coeffs.clone() }
    }

    pub fn from_serial(s: &AlgebraicSerial, minpoly: &Arc<MinPoly>) -> Result<Self, ArithError> {
        if s.minpoly != minpoly.coeffs {
            return Err(ArithError::MinPolyMismatch);
        }
        Ok(AlgebraicNumber::new(s.coeffs.clone(), minpoly))
    }
}

/// Wire form: ordered coefficient list plus minimal-polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicSerial {
    pub coeffs: Vec<Rational>,
    pub minpoly: Vec<i64>,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_field(other).is_ok()
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*a"),
                _ => format!("{c}*a^{i}"),
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Field for AlgebraicNumber {
    fn zero_like(&self) -> Self {
        AlgebraicNumber::new(Vec::new(), &self.minpoly)
    }
    fn one_like(&self) -> Self {
        AlgebraicNumber::from_rational(Rational::one(), &self.minpoly)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        AlgebraicNumber::from_rational(r.clone(), &self.minpoly)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_elem()
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("minimal polynomial mismatch")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_add(&other.neg()).expect("minimal polynomial mismatch")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("minimal polynomial mismatch")
    }
    fn neg(&self) -> Self {
        AlgebraicNumber { coeffs: self.coeffs.iter().map(|c| -c).collect(), minpoly: self.minpoly.clone() }
    }
    fn inv(&self) -> Result<Self, ArithError> {
        self.try_inv()
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        AlgebraicNumber { coeffs: self.coeffs.iter().map(|c| c * r).collect(), minpoly: self.minpoly.clone() }
    }
    fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| self.coeffs[0].clone())
    }
    fn add_assign(&mut self, other: &Self) {
        debug_assert!(self.same_field(other).is_ok());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }
    fn sub_assign(&mut self, other: &Self) {
        debug_assert!(self.same_field(other).is_ok());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Arc<MinPoly> {
        MinPoly::new(vec![1, -57, -289, 1]).unwrap()
    }

    fn alg(v: &[i64], m: &Arc<MinPoly>) -> AlgebraicNumber {
        AlgebraicNumber::new(v.iter().map(|&c| Rational::from(c)).collect(), m)
    }

    #[test]
    fn alpha_times_alpha_squared() {
        let m = field();
        let a = AlgebraicNumber::generator(&m);
        let a2 = alg(&[0, 0, 1], &m);
        assert_eq!(a.mul(&a2), alg(&[-1, 57, 289], &m));
    }

    #[test]
    fn inverse_of_alpha() {
        let m = field();
        let a = AlgebraicNumber::generator(&m);
        let inv = a.inv().unwrap();
        assert_eq!(inv, alg(&[57, 289, -1], &m));
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn add_zero_is_identity() {
        let m = field();
        let a = alg(&[3, -2, 7], &m);
        assert_eq!(a.add(&a.zero_like()), a);
    }

    #[test]
    fn mismatched_minpoly_is_error() {
        let m1 = field();
        let m2 = MinPoly::new(vec![-2, 0, 1]).unwrap();
        let a = AlgebraicNumber::generator(&m1);
        let b = AlgebraicNumber::generator(&m2);
        assert_eq!(a.try_mul(&b), Err(ArithError::MinPolyMismatch));
        assert_eq!(a.try_add(&b), Err(ArithError::MinPolyMismatch));
    }

    #[test]
    fn zero_not_invertible() {
        let m = field();
        assert!(alg(&[], &m).inv().is_err());
    }

    #[test]
    fn non_invertible_in_reducible_ring() {
        // x^2 - 1 = (x-1)(x+1): α - 1 is a zero divisor.
        let m = MinPoly::new(vec![-1, 0, 1]).unwrap();
        let e = alg(&[-1, 1], &m);
        assert_eq!(e.inv(), Err(ArithError::NotInvertible));
    }

    #[test]
    fn serial_round_trip() {
        let m = field();
        let a = alg(&[3, -2, 7], &m).mul_rational(&Rational::frac(1, 3));
        let s = a.to_serial();
        assert_eq!(s.minpoly, vec![1, -57, -289, 1]);
        assert_eq!(AlgebraicNumber::from_serial(&s, &m).unwrap(), a);
    }
}
