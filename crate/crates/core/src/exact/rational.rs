use super::{ArithError, Field};
use rug::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Rational(rug::Rational);

impl Rational {
    pub fn zero() -> Self {
        Rational(rug::Rational::new())
    }

    pub fn one() -> Self {
        Rational::from(1)
    }

    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self, ArithError> {
        let den = den.into();
        if den == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(rug::Rational::from((num.into(), den))))
    }

    /// Panicking constructor for literals.
    pub fn frac(num: i64, den: i64) -> Self {
        Rational::new(num, den).expect("zero denominator in literal")
    }

    pub fn from_integer(n: Integer) -> Self {
        Rational(rug::Rational::from(n))
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }

    pub fn to_integer(&self) -> Option<Integer> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp0() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.clone().abs())
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Rational, ArithError> {
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(rug::Rational::from(&self.0 / &other.0)))
    }

    pub fn recip(&self) -> Result<Rational, ArithError> {
        Rational::one().checked_div(self)
    }

    pub fn pow_i(&self, e: i32) -> Result<Rational, ArithError> {
        if e < 0 {
            return self.recip()?.pow_i(-e);
        }
        use rug::ops::Pow;
        Ok(Rational(rug::Rational::from((&self.0).pow(e as u32))))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Bit length of numerator plus denominator; a size measure for pivoting.
    pub fn bit_size(&self) -> u32 {
        self.0.numer().significant_bits() + self.0.denom().significant_bits()
    }

    pub fn inner(&self) -> &rug::Rational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(rug::Rational::from(n))
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational(rug::Rational::from(n))
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational::from_integer(n)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parse_int = |p: &str| Integer::from_str(p.trim()).map_err(|_| ArithError::Parse(s.into()));
        match t.split_once('/') {
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Rational::from_integer(parse_int(t)?)),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(rug::Rational::from(&self.0 $op &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(rug::Rational::from(-&self.0))
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ArithError> {
        self.recip()
    }
    fn mul_rational(&self, r: &Rational) -> Self {
        self * r
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn add_assign(&mut self, other: &Self) {
        self.0 += &other.0;
    }
    fn sub_assign(&mut self, other: &Self) {
        self.0 -= &other.0;
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0 += rug::Rational::from(&a.0 * &b.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn add_reduces() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
    }

    #[test]
    fn mul_reduces() {
        let p = &q("2/4") * &q("2/1");
        assert_eq!(p, Rational::one());
        assert_eq!(p.to_string(), "1");
    }

    #[test]
    fn div_by_zero_is_error() {
        assert_eq!(q("1").checked_div(&q("0/1")), Err(ArithError::DivisionByZero));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn string_form() {
        assert_eq!(q("-6/4").to_string(), "-3/2");
        assert_eq!(q("35105/3").to_string(), "35105/3");
        assert_eq!(q(" 12 ").to_string(), "12");
        assert!("1/x".parse::<Rational>().is_err());
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = &q("3/7") - &q("3/7");
        assert_eq!(z.numer(), &0);
        assert_eq!(z.denom(), &1);
    }
}
