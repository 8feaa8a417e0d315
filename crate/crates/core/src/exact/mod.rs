//! Exact coefficient fields: rationals, elements of a simple algebraic
//! extension, univariate polynomials and rational functions.

mod algebraic;
mod bareiss;
mod factored;
mod poly;
mod ratfn;
mod rational;

pub use algebraic::{AlgebraicNumber, AlgebraicSerial, MinPoly};
pub use bareiss::{rank, solve_exact, Echelon, LinSolveError};
pub use factored::{FactorBasis, FactoredFraction, FactoredSerial};
pub use poly::Poly;
pub use ratfn::RationalFunction;
pub use rational::Rational;

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible modulo the minimal polynomial")]
    NotInvertible,
    #[error("operands use different minimal polynomials")]
    MinPolyMismatch,
    #[error("evaluation at a pole ({0})")]
    Pole(String),
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// A commutative field with exact arithmetic.
///
/// Elements of an extension carry their defining context, so constants are
/// produced from an existing element (`zero_like`, `from_rational_like`).
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;
    fn mul_rational(&self, r: &Rational) -> Self;
    /// The value as a rational, if it lies in the prime field.
    fn as_rational(&self) -> Option<Rational>;

    fn from_int_like(&self, n: i64) -> Self {
        self.from_rational_like(&Rational::from(n))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Field::add(self, other);
    }

    fn sub_assign(&mut self, other: &Self) {
        *self = Field::sub(self, other);
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let p = a.mul(b);
        self.add_assign(&p);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    fn powi(&self, e: i64) -> Result<Self, ArithError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }
}
