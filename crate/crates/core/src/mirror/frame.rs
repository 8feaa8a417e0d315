use super::MirrorError;
use crate::exact::{AlgebraicNumber, Field, Poly, Rational, RationalFunction};
use crate::picard_fuchs::{apparent_periods, conifold_periods, large_volume_periods, CYModel, LocalPeriods, PointKind};
use crate::series::{Frame, LogSeries, TruncatedSeries};

/// Flat-coordinate data at one special point.
///
/// Everything is stored as series in the local coordinate `s`; `s_of_y`
/// expresses `s` through the flat coordinate `Y` (`q`, `qt`, the conifold
/// `V = k_U U`, or `U` at the apparent point).
#[derive(Debug, Clone)]
pub struct TopologicalFrame<C: Field> {
    pub kind: PointKind,
    pub frame: Frame<C>,
    pub yvar: String,
    pub w0: TruncatedSeries<C>,
    /// `theta_x T` with `T = w1/w0`
    pub theta_t: TruncatedSeries<C>,
    pub y_of_s: TruncatedSeries<C>,
    pub s_of_y: TruncatedSeries<C>,
}

/// Limits of the generators `A_1, B_1, B_2, B_3` as local series.
#[derive(Debug, Clone)]
pub struct AbLimits<C: Field> {
    pub a1: TruncatedSeries<C>,
    pub b: Vec<TruncatedSeries<C>>,
}

impl<C: Field> AbLimits<C> {
    pub fn b1(&self) -> &TruncatedSeries<C> {
        &self.b[0]
    }
    pub fn b2(&self) -> &TruncatedSeries<C> {
        &self.b[1]
    }
    pub fn b3(&self) -> &TruncatedSeries<C> {
        &self.b[2]
    }
}

pub fn yvar(kind: PointKind) -> &'static str {
    match kind {
        PointKind::LargeX => "q",
        PointKind::LargeZ => "qt",
        PointKind::Conifold => "V",
        PointKind::Apparent => "U",
    }
}

impl<C: Field> TopologicalFrame<C> {
    pub fn from_periods(p: &LocalPeriods<C>) -> Result<Self, MirrorError> {
        let w0l = LogSeries::from_series(p.w0.clone());
        let t = p.w1.try_div(&w0l)?;
        let theta_t = t.theta_apply(&p.frame);
        if !theta_t.is_log_free() {
            return Err(MirrorError::Branch("theta T carries log terms".into()));
        }
        let theta_t = theta_t.part(0);
        let y_of_s = match t.max_log_power() {
            0 => t.part(0),
            1 => {
                if !t.part(1).sub(&TruncatedSeries::one(t.var(), t.part(0).proto(), t.order())).is_zero() {
                    return Err(MirrorError::Branch("log coefficient of T is not 1".into()));
                }
                t.part(0).exp()?.shift(1)
            }
            _ => return Err(MirrorError::Branch("T has higher log powers".into())),
        };
        if y_of_s.valuation() != Some(1) || !y_of_s.leading().unwrap().is_one() {
            return Err(MirrorError::Branch("flat coordinate is not s + O(s^2)".into()));
        }
        let yv = yvar(p.kind);
        let s_of_y = y_of_s.revert(yv)?;
        Ok(TopologicalFrame { kind: p.kind, frame: p.frame.clone(), yvar: yv.into(), w0: p.w0.clone(), theta_t, y_of_s, s_of_y })
    }

    pub fn proto(&self) -> &C {
        self.w0.proto()
    }

    pub fn var(&self) -> &str {
        self.w0.var()
    }

    /// Apply `theta_x` to a log-free local series.
    pub fn theta(&self, f: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        LogSeries::from_series(f.clone()).theta_apply(&self.frame).part(0)
    }

    pub fn ab_limits(&self) -> Result<AbLimits<C>, MirrorError> {
        let mut b = Vec::new();
        let mut tw = self.w0.clone();
        for _ in 0..3 {
            tw = self.theta(&tw);
            b.push(tw.try_div(&self.w0)?);
        }
        let one = TruncatedSeries::one(self.var(), self.proto(), self.theta_t.order());
        let a1 = self.theta(&self.theta_t).try_div(&self.theta_t)?.sub(&one);
        Ok(AbLimits { a1, b })
    }

    /// Local expansion of a global exact polynomial pair `num/den` in `x`.
    pub fn expand_fraction(&self, num: &Poly<Rational>, den: &Poly<Rational>, order: i64) -> Result<TruncatedSeries<C>, MirrorError> {
        let proto = self.proto().clone();
        let lift = |p: &Poly<Rational>| p.map(&proto, |c| proto.from_rational_like(c));
        let (n, d, shift) = match &self.frame {
            Frame::Finite(c) => (lift(num).taylor_shift(c), lift(den).taylor_shift(c), 0i64),
            Frame::Infinity => {
                let dn = num.degree().unwrap_or(0);
                let dd = den.degree().unwrap_or(0);
                (lift(num).reversed(dn), lift(den).reversed(dd), dd as i64 - dn as i64)
            }
        };
        if d.is_zero() {
            return Err(MirrorError::Arith("zero denominator".into()));
        }
        if n.is_zero() {
            return Ok(TruncatedSeries::zero(self.var(), &proto, order));
        }
        let vd = d.valuation().unwrap() as i64;
        let vn = n.valuation().unwrap() as i64;
        let len = (order - shift + 2 * vd - vn).max(order - shift + vd).max(n.coeffs().len().max(d.coeffs().len()) as i64 + 1).max(1);
        let ns = TruncatedSeries::from_poly(self.var(), &n, len);
        let ds = TruncatedSeries::from_poly(self.var(), &d, len);
        Ok(ns.try_div(&ds)?.shift(shift).truncate(order))
    }

    pub fn expand_ratfn(&self, f: &RationalFunction, order: i64) -> Result<TruncatedSeries<C>, MirrorError> {
        self.expand_fraction(f.numer(), f.denom(), order)
    }

    /// Rewrite a local series in the flat coordinate.
    pub fn to_flat(&self, f: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>, MirrorError> {
        Ok(f.compose(&self.s_of_y)?)
    }

    /// Quantum Yukawa coupling `x^3 C w0^-2 (theta_x T)^-3` in the flat coordinate.
    pub fn quantum_yukawa(&self, model: &CYModel) -> Result<TruncatedSeries<C>, MirrorError> {
        let order = self.theta_t.order();
        let x3c = self.expand_ratfn(&model.x3c(), order)?;
        let k = x3c.mul(&self.w0.powi(-2)?).mul(&self.theta_t.powi(-3)?);
        self.to_flat(&k)
    }
}

pub fn build_frame(model: &CYModel, kind: PointKind, order: i64) -> Result<TopologicalFrame<Rational>, MirrorError> {
    let p = match kind {
        PointKind::LargeX | PointKind::LargeZ => large_volume_periods(model, kind, order)?,
        PointKind::Apparent => apparent_periods(model, order)?,
        PointKind::Conifold => return Err(MirrorError::Arith("conifold frames live over the extension field".into())),
    };
    TopologicalFrame::from_periods(&p)
}

pub fn build_conifold_frame(model: &CYModel, order: i64) -> Result<TopologicalFrame<AlgebraicNumber>, MirrorError> {
    let (p, _) = conifold_periods(model, order)?;
    TopologicalFrame::from_periods(&p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| Rational::from(c)).collect()
    }

    #[test]
    fn inverse_mirror_map_x_side() {
        let m = CYModel::builtin();
        let f = build_frame(&m, PointKind::LargeX, 8).unwrap();
        let inv = f.s_of_y.try_inv().unwrap();
        assert_eq!(inv.dense_from(-1)[..6], ints(&[1, 14, 189, 2534, 42826, 869162])[..]);
    }

    #[test]
    fn inverse_mirror_map_z_side() {
        let m = CYModel::builtin();
        let f = build_frame(&m, PointKind::LargeZ, 8).unwrap();
        let inv = f.s_of_y.try_inv().unwrap();
        assert_eq!(inv.dense_from(-1)[..5], ints(&[1, 70, 3773, 232750, 18421802])[..]);
    }

    #[test]
    fn quantum_yukawa_both_sides() {
        let m = CYModel::builtin();
        let kx = build_frame(&m, PointKind::LargeX, 8).unwrap().quantum_yukawa(&m).unwrap();
        assert_eq!(kx.dense_from(0)[..5], ints(&[42, 196, 9996, 344176, 12685708])[..]);
        let kz = build_frame(&m, PointKind::LargeZ, 8).unwrap().quantum_yukawa(&m).unwrap();
        assert_eq!(kz.dense_from(0)[..4], ints(&[14, 588, 97412, 15765456])[..]);
    }

    #[test]
    fn conifold_mirror_map() {
        let m = CYModel::builtin();
        let f = build_conifold_frame(&m, 6).unwrap();
        let c2 = f.s_of_y.coeff(2);
        let expect = AlgebraicNumber::new(
            ["64163/1372", "83161/343", "-1151/1372"].iter().map(|s| s.parse().unwrap()).collect(),
            &m.minpoly,
        );
        assert_eq!(c2, expect);
    }

    #[test]
    fn a1_limits_at_large_volume() {
        // theta_x = -theta_z, so A_1 = -theta_z log(dT/dz) - 2 = -1 + O(z)
        let m = CYModel::builtin();
        let f = build_frame(&m, PointKind::LargeZ, 8).unwrap();
        let ab = f.ab_limits().unwrap();
        assert_eq!(ab.a1.coeff(0), Rational::from(-1));
        assert_eq!(ab.b1().coeff(0), Rational::from(-1));
        let fx = build_frame(&m, PointKind::LargeX, 8).unwrap();
        let abx = fx.ab_limits().unwrap();
        assert_eq!(abx.b1().coeff(1), Rational::from(5));
        assert_eq!(abx.a1.coeff(0), Rational::from(-1));
    }
}
