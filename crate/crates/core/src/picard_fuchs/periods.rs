use super::{frobenius_basis, localize_operator, normalize_frobenius, CYModel, FrobeniusBasis, PfError};
use crate::exact::{AlgebraicNumber, Field, Rational};
use crate::series::{Frame, LogSeries, TruncatedSeries};

/// The four kinds of special point used downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    /// `x = 0`
    LargeX,
    /// `x = infinity`, local coordinate `z = 1/x`
    LargeZ,
    /// a root of the discriminant
    Conifold,
    /// the apparent singularity
    Apparent,
}

impl PointKind {
    pub fn var(&self) -> &'static str {
        match self {
            PointKind::LargeX => "x",
            PointKind::LargeZ => "z",
            PointKind::Conifold | PointKind::Apparent => "s",
        }
    }
}

/// The two periods that define a flat coordinate at a point.
///
/// At the large-volume points `w1 = log(s) w0 + phi`; elsewhere `w1` is log-free.
#[derive(Debug, Clone)]
pub struct LocalPeriods<C: Field> {
    pub kind: PointKind,
    pub frame: Frame<C>,
    pub w0: TruncatedSeries<C>,
    pub w1: LogSeries<C>,
}

fn log_free<C: Field>(w: &LogSeries<C>, what: &str) -> Result<TruncatedSeries<C>, PfError> {
    if !w.is_log_free() {
        return Err(PfError::Precondition(format!("{what} carries log terms")));
    }
    Ok(w.part(0))
}

pub fn local_basis<C: Field>(model: &CYModel, frame: &Frame<C>, var: &str, proto: &C, order: i64) -> Result<FrobeniusBasis<C>, PfError> {
    let l = localize_operator(&model.operator, frame, var, proto);
    normalize_frobenius(&frobenius_basis(&l, order)?)
}

/// `w0 = W(n0, 0)` and `w1 = W(n0, 1)` at `x = 0` or at infinity.
pub fn large_volume_periods(model: &CYModel, kind: PointKind, order: i64) -> Result<LocalPeriods<Rational>, PfError> {
    let q0 = Rational::zero();
    let frame = match kind {
        PointKind::LargeX => Frame::Finite(q0.clone()),
        PointKind::LargeZ => Frame::Infinity,
        _ => return Err(PfError::Precondition("not a large-volume point".into())),
    };
    let b = local_basis(model, &frame, kind.var(), &q0, order)?;
    let n0 = b.indices[0].0;
    let w0 = log_free(b.solution(n0, 0).ok_or(PfError::Singular)?, "w0")?;
    let w1 = b.solution(n0, 1).ok_or(PfError::Singular)?.clone();
    if w1.part(1) != w0 || w1.max_log_power() != 1 {
        return Err(PfError::Precondition("w1 is not log(s) w0 + series".into()));
    }
    Ok(LocalPeriods { kind, frame, w0, w1 })
}

/// Conifold periods over `Q[a]/(m)`: `w0 = 1 + O(s^3)`, `w1 = s + O(s^2)` the
/// vanishing period, and `w2 = s^2 + O(s^3)`.
pub fn conifold_periods(model: &CYModel, order: i64) -> Result<(LocalPeriods<AlgebraicNumber>, TruncatedSeries<AlgebraicNumber>), PfError> {
    let alpha = AlgebraicNumber::generator(&model.minpoly);
    let proto = alpha.zero_like();
    let frame = Frame::Finite(alpha);
    let b = local_basis(model, &frame, "s", &proto, order)?;
    let w0 = log_free(b.solution(0, 0).ok_or(PfError::Singular)?, "conifold w0")?;
    let wlog = b.solution(1, 1).ok_or(PfError::Singular)?;
    if wlog.max_log_power() != 1 {
        return Err(PfError::Precondition("conifold log solution has higher log powers".into()));
    }
    let w1 = wlog.part(1);
    let w2 = log_free(b.solution(2, 0).ok_or(PfError::Singular)?, "conifold w2")?;
    Ok((LocalPeriods { kind: PointKind::Conifold, frame, w0, w1: LogSeries::from_series(w1) }, w2))
}

/// Periods at the apparent singularity: `w0 = W(0,0)`, `w1 = W(1,0)`.
pub fn apparent_periods(model: &CYModel, order: i64) -> Result<LocalPeriods<Rational>, PfError> {
    let q0 = Rational::zero();
    let frame = Frame::Finite(model.apparent_point.clone());
    let b = local_basis(model, &frame, "s", &q0, order)?;
    for s in &b.solutions {
        log_free(s, "apparent-point solution")?;
    }
    let w0 = b.solution(0, 0).ok_or(PfError::Singular)?.part(0);
    let w1 = b.solution(1, 0).ok_or(PfError::Singular)?.clone();
    Ok(LocalPeriods { kind: PointKind::Apparent, frame, w0, w1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::MinPoly;
    use std::sync::Arc;

    fn alg(c: [&str; 3], m: &Arc<MinPoly>) -> AlgebraicNumber {
        AlgebraicNumber::new(c.iter().map(|s| s.parse().unwrap()).collect(), m)
    }

    #[test]
    fn conifold_normalized_coefficients() {
        let model = CYModel::builtin();
        let (p, w2) = conifold_periods(&model, 6).unwrap();
        let m = &model.minpoly;
        assert_eq!(p.w0.coeff(1), AlgebraicNumber::from_rational(Rational::zero(), m));
        assert_eq!(p.w0.coeff(2), AlgebraicNumber::from_rational(Rational::zero(), m));
        let w1 = p.w1.part(0);
        assert!(w1.coeff(1).is_one());
        assert_eq!(w1.coeff(2), alg(["-64163/1372", "-83161/343", "1151/1372"], m));
        assert_eq!(p.w0.coeff(3), alg(["-82833753/33614", "-1555547739/134456", "16148435/403368"], m));
        assert!(w2.coeff(2).is_one());
    }

    #[test]
    fn apparent_periods_are_regular() {
        let model = CYModel::builtin();
        let p = apparent_periods(&model, 8).unwrap();
        assert_eq!(p.w0.coeff(2), "-1/42".parse().unwrap());
        assert_eq!(p.w1.part(0).coeff(2), "-8/21".parse().unwrap());
    }
}
