use super::{SeriesError, TruncatedSeries};
use crate::exact::{Field, Rational};
use std::fmt;

/// Where a local coordinate `s` sits relative to the global `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Frame<C> {
    /// `x = s + c`, so `theta_x = (s + c) d/ds`.
    Finite(C),
    /// `x = 1/s`, so `theta_x = -s d/ds`.
    Infinity,
}

/// `sum_j parts[j] * log(s)^j`, all parts in the same variable.
#[derive(Clone, PartialEq)]
pub struct LogSeries<C: Field> {
    parts: Vec<TruncatedSeries<C>>,
}

impl<C: Field> LogSeries<C> {
    pub fn new(parts: Vec<TruncatedSeries<C>>) -> Result<Self, SeriesError> {
        let first = parts.first().ok_or_else(|| SeriesError::Precondition("log series needs a part".into()))?;
        if let Some(p) = parts.iter().find(|p| p.var() != first.var()) {
            return Err(SeriesError::VariableMismatch(first.var().into(), p.var().into()));
        }
        let order = parts.iter().map(|p| p.order()).min().unwrap();
        let mut parts: Vec<_> = parts.iter().map(|p| p.truncate(order)).collect();
        while parts.len() > 1 && parts.last().unwrap().is_zero() {
            parts.pop();
        }
        Ok(LogSeries { parts })
    }

    pub fn from_series(s: TruncatedSeries<C>) -> Self {
        LogSeries { parts: vec![s] }
    }

    /// `log(s)` itself.
    pub fn log_var(var: &str, proto: &C, order: i64) -> Self {
        LogSeries {
            parts: vec![TruncatedSeries::zero(var, proto, order), TruncatedSeries::one(var, proto, order)],
        }
    }

    pub fn var(&self) -> &str {
        self.parts[0].var()
    }

    pub fn order(&self) -> i64 {
        self.parts[0].order()
    }

    pub fn max_log_power(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn parts(&self) -> &[TruncatedSeries<C>] {
        &self.parts
    }

    /// Coefficient of `log(s)^j`, zero beyond the stored powers.
    pub fn part(&self, j: usize) -> TruncatedSeries<C> {
        self.parts
            .get(j)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.var(), self.parts[0].proto(), self.order()))
    }

    pub fn is_log_free(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn truncate(&self, order: i64) -> Self {
        LogSeries { parts: self.parts.iter().map(|p| p.truncate(order)).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.parts.len().max(other.parts.len());
        let parts = (0..n).map(|j| self.part(j).try_add(&other.part(j))).collect::<Result<Vec<_>, _>>()?;
        LogSeries::new(parts)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("series variable mismatch")
    }

    pub fn neg(&self) -> Self {
        LogSeries { parts: self.parts.iter().map(|p| p.neg()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        LogSeries::new(self.parts.iter().map(|p| p.scale(c)).collect()).unwrap()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.parts.len() + other.parts.len() - 1;
        let mut acc: Vec<Option<TruncatedSeries<C>>> = vec![None; n];
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in other.parts.iter().enumerate() {
                let t = a.try_mul(b)?;
                acc[i + j] = Some(match acc[i + j].take() {
                    None => t,
                    Some(s) => s.add(&t),
                });
            }
        }
        LogSeries::new(acc.into_iter().map(|p| p.unwrap()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("series variable mismatch")
    }

    /// Division by a log-free series with invertible leading coefficient.
    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        if !other.is_log_free() {
            return Err(SeriesError::LogDivisor);
        }
        let inv = other.parts[0].try_inv()?;
        LogSeries::new(self.parts.iter().map(|p| p.try_mul(&inv)).collect::<Result<Vec<_>, _>>()?)
    }

    pub fn try_div_series(&self, other: &TruncatedSeries<C>) -> Result<Self, SeriesError> {
        self.try_div(&LogSeries::from_series(other.clone()))
    }

    /// Apply the global `theta_x` in the local coordinate described by `frame`.
    pub fn theta_apply(&self, frame: &Frame<C>) -> Self {
        let n = self.parts.len();
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let next = self.part(j + 1).scale_rational(&Rational::from((j + 1) as i64));
            let t = match frame {
                Frame::Finite(c) => {
                    // (s + c) (f_j' + (j+1) f_{j+1} / s)
                    let inner = self.parts[j].derivative().add(&next.shift(-1));
                    if c.is_zero() {
                        inner.shift(1)
                    } else {
                        inner.shift(1).add(&inner.scale(c))
                    }
                }
                Frame::Infinity => self.parts[j].theta().add(&next).neg(),
            };
            out.push(t);
        }
        LogSeries::new(out).unwrap()
    }

    pub fn map<D: Field>(&self, proto: &D, f: impl Fn(&C) -> D + Copy) -> LogSeries<D> {
        LogSeries { parts: self.parts.iter().map(|p| p.map(proto, f)).collect() }
    }
}

impl<C: Field> fmt::Display for LogSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .parts
            .iter()
            .enumerate()
            .filter(|(j, p)| *j == 0 || !p.is_zero())
            .map(|(j, p)| match j {
                0 => format!("[{p}]"),
                1 => format!("[{p}]*log({})", self.var()),
                _ => format!("[{p}]*log({})^{j}", self.var()),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<C: Field> fmt::Debug for LogSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q0() -> Rational {
        Rational::zero()
    }

    #[test]
    fn theta_of_monomial_at_zero() {
        let f = LogSeries::from_series(TruncatedSeries::from_ints("x", 4, &[1], 9));
        let t = f.theta_apply(&Frame::Finite(q0()));
        assert_eq!(t.part(0), TruncatedSeries::from_ints("x", 4, &[4], 9));
    }

    #[test]
    fn theta_of_log_is_one() {
        let l = LogSeries::log_var("x", &q0(), 6);
        let t = l.theta_apply(&Frame::Finite(q0()));
        assert!(t.is_log_free());
        assert_eq!(t.part(0), TruncatedSeries::one("x", &q0(), 6));
    }

    #[test]
    fn theta_at_three() {
        let s = LogSeries::from_series(TruncatedSeries::from_ints("s", 1, &[1], 6));
        let t = s.theta_apply(&Frame::Finite(Rational::from(3)));
        assert_eq!(t.part(0), TruncatedSeries::from_ints("s", 0, &[3, 1], 5));
    }

    #[test]
    fn theta_at_infinity() {
        // x = 1/z, theta_x z^2 = -2 z^2
        let s = LogSeries::from_series(TruncatedSeries::from_ints("z", 2, &[1], 6));
        let t = s.theta_apply(&Frame::Infinity);
        assert_eq!(t.part(0), TruncatedSeries::from_ints("z", 2, &[-2], 6));
    }

    #[test]
    fn log_product() {
        let l = LogSeries::log_var("x", &q0(), 5);
        let l2 = l.mul(&l);
        assert_eq!(l2.max_log_power(), 2);
        let t = l2.theta_apply(&Frame::Finite(q0()));
        assert_eq!(t.part(1), TruncatedSeries::from_ints("x", 0, &[2], 5));
        assert!(t.part(0).is_zero());
    }

    #[test]
    fn log_divisor_rejected() {
        let l = LogSeries::log_var("x", &q0(), 5);
        assert!(matches!(l.try_div(&l), Err(SeriesError::LogDivisor)));
    }
}
