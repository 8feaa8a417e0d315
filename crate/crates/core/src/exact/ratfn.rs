use super::{ArithError, Field, Poly, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Univariate rational function over ℚ in lowest terms with monic denominator.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    var: String,
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RationalFunction {
    pub fn new(var: &str, num: Poly<Rational>, den: Poly<Rational>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero(var));
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading().unwrap().clone();
        if !lc.is_one() {
            let li = lc.recip().unwrap();
            num = num.scale(&li);
            den = den.scale(&li);
        }
        Ok(RationalFunction { var: var.to_string(), num, den })
    }

    pub fn zero(var: &str) -> Self {
        RationalFunction { var: var.to_string(), num: Poly::zero(&Rational::zero()), den: Poly::from_ints(&[1]) }
    }

    pub fn constant(var: &str, c: Rational) -> Self {
        RationalFunction::from_poly(var, Poly::constant(c))
    }

    pub fn from_poly(var: &str, p: Poly<Rational>) -> Self {
        RationalFunction { var: var.to_string(), num: p, den: Poly::from_ints(&[1]) }
    }

    /// The coordinate function itself.
    pub fn variable(var: &str) -> Self {
        RationalFunction::from_poly(var, Poly::x())
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check_var(&self, other: &Self) -> Result<(), ArithError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(ArithError::VariableMismatch(self.var.clone(), other.var.clone()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_var(other)?;
        if self.den == other.den {
            return RationalFunction::new(&self.var, self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RationalFunction::new(&self.var, num, self.den.mul(&other.den))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_var(other)?;
        RationalFunction::new(&self.var, self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_var(other)?;
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        RationalFunction::new(&self.var, self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { var: self.var.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero(&self.var);
        }
        RationalFunction { var: self.var.clone(), num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn powi(&self, e: i32) -> Result<Self, ArithError> {
        if e < 0 {
            if self.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            let inv = RationalFunction::new(&self.var, self.den.clone(), self.num.clone())?;
            return inv.powi(-e);
        }
        Ok(RationalFunction { var: self.var.clone(), num: self.num.pow(e as u32), den: self.den.pow(e as u32) })
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ArithError::Pole(format!("{}={}", self.var, x)));
        }
        Ok(&self.num.eval(x) / &d)
    }

    /// d/dvar
    pub fn derive(&self) -> Self {
        let num = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RationalFunction::new(&self.var, num, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// var * d/dvar
    pub fn theta(&self) -> Self {
        let d = self.derive();
        RationalFunction::new(&self.var, d.num.shift(1), d.den).expect("nonzero denominator")
    }

    pub fn to_serial(&self) -> RatFnSerial {
        RatFnSerial { var: self.var.clone(), num: self.num.coeffs().to_vec(), den: self.den.coeffs().to_vec() }
    }

    pub fn from_serial(s: &RatFnSerial) -> Result<Self, ArithError> {
        RationalFunction::new(&s.var, Poly::from_rationals(s.num.clone()), Poly::from_rationals(s.den.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatFnSerial {
    pub var: String,
    pub num: Vec<Rational>,
    pub den: Vec<Rational>,
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num.fmt_var(&self.var))
        } else {
            write!(f, "({})/({})", self.num.fmt_var(&self.var), self.den.fmt_var(&self.var))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dis() -> RationalFunction {
        RationalFunction::from_poly("x", Poly::from_ints(&[1, -57, -289, 1]))
    }

    #[test]
    fn eval_discriminant() {
        assert_eq!(dis().eval(&Rational::zero()).unwrap(), Rational::one());
        assert_eq!(dis().eval(&Rational::from(3)).unwrap(), Rational::from(-2744));
    }

    #[test]
    fn derive_cube() {
        let x3 = RationalFunction::from_poly("x", Poly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(x3.derive(), RationalFunction::from_poly("x", Poly::from_ints(&[0, 0, 3])));
    }

    #[test]
    fn pole_is_error() {
        let f = RationalFunction::new("x", Poly::from_ints(&[1]), Poly::from_ints(&[-3, 1])).unwrap();
        assert!(matches!(f.eval(&Rational::from(3)), Err(ArithError::Pole(_))));
    }

    #[test]
    fn division_reduces() {
        // (x^2 - 1) / (x - 1) = x + 1
        let a = RationalFunction::from_poly("x", Poly::from_ints(&[-1, 0, 1]));
        let b = RationalFunction::from_poly("x", Poly::from_ints(&[-1, 1]));
        let q = a.try_div(&b).unwrap();
        assert_eq!(q, RationalFunction::from_poly("x", Poly::from_ints(&[1, 1])));
        assert!(a.try_div(&RationalFunction::zero("x")).is_err());
    }

    #[test]
    fn denominator_is_monic() {
        let f = RationalFunction::new("x", Poly::from_ints(&[2]), Poly::from_ints(&[4, 2])).unwrap();
        assert_eq!(f.denom(), &Poly::from_ints(&[2, 1]));
        assert_eq!(f.numer(), &Poly::from_ints(&[1]));
    }

    #[test]
    fn variable_mismatch() {
        let a = RationalFunction::variable("x");
        let b = RationalFunction::variable("z");
        assert!(matches!(a.try_add(&b), Err(ArithError::VariableMismatch(..))));
    }
}
