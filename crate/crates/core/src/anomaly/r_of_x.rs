use super::{theta_log_xc, AnomalyError};
use crate::exact::{Field, Poly, Rational, RationalFunction};
use crate::mirror::{build_frame, TopologicalFrame};
use crate::picard_fuchs::{CYModel, PointKind};
use crate::series::TruncatedSeries;

/// `A_2 + 4 B_2 + 2 B_1 (A_1 - B_1 - 1) - L (A_1 + 2 B_1 + 4)` in a frame,
/// with `A_2 = theta A_1 + A_1^2`.
pub fn r_series<C: Field>(model: &CYModel, frame: &TopologicalFrame<C>) -> Result<TruncatedSeries<C>, AnomalyError> {
    let ab = frame.ab_limits()?;
    let (a1, b1, b2) = (&ab.a1, ab.b1(), ab.b2());
    let order = a1.order().min(b2.order()) - 1;
    let l = frame.expand_ratfn(&theta_log_xc(model), order)?;
    let one = TruncatedSeries::one(frame.var(), frame.proto(), order);
    let a2 = frame.theta(a1).add(&a1.mul(a1));
    let two = Rational::from(2);
    Ok(a2
        .add(&b2.scale_rational(&Rational::from(4)))
        .add(&b1.mul(&a1.sub(b1).sub(&one)).scale_rational(&two))
        .sub(&l.mul(&a1.add(&b1.scale_rational(&two)).add_constant(&frame.proto().from_int_like(4))))
        .truncate(order))
}

const SPARE: i64 = 6;

/// Reconstruct `r(x)` from its `x = 0` expansion with denominator
/// `(x - x_app) dis(x)`: the numerator is the shortest polynomial whose
/// product with the denominator matches at least `SPARE` further coefficients.
pub fn derive_r_of_x(model: &CYModel, order: i64) -> Result<RationalFunction, AnomalyError> {
    let frame = build_frame(model, PointKind::LargeX, order)?;
    let rs = r_series(model, &frame)?;
    let den = Poly::from_rationals(vec![-model.apparent_point.clone(), Rational::one()]).mul(&model.discriminant);
    let dens = TruncatedSeries::from_poly("x", &den, rs.order());
    let num = rs.mul(&dens);
    let m = num.order();
    let coeffs = num.dense_from(0);
    let last_nonzero = coeffs.iter().rposition(|c| !c.is_zero()).map_or(-1, |i| i as i64);
    if m - 1 - last_nonzero < SPARE {
        return Err(AnomalyError::RationalReconstruction(format!(
            "numerator not confirmed: last nonzero coefficient at {last_nonzero}, series known to order {m}"
        )));
    }
    let numer = Poly::from_rationals(coeffs[..=(last_nonzero.max(0) as usize)].to_vec());
    let r = RationalFunction::new("x", numer, den).map_err(|e| AnomalyError::RationalReconstruction(e.to_string()))?;
    let zf = build_frame(model, PointKind::LargeZ, order)?;
    let rz = r_series(model, &zf)?;
    let n = rz.order();
    if zf.expand_ratfn(&r, n)?.sub(&rz).truncate(n).is_zero() {
        Ok(r)
    } else {
        Err(AnomalyError::RationalReconstruction("derived r(x) fails the relation at z = 0".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::build_conifold_frame;

    fn closed_form() -> RationalFunction {
        let dis = Poly::from_ints(&[1, -57, -289, 1]);
        let a = RationalFunction::constant("x", Rational::from(11));
        let b = RationalFunction::new("x", Poly::from_ints(&[-36]), Poly::from_ints(&[-21, 7])).unwrap();
        let c = RationalFunction::new("x", Poly::from_ints(&[-40, 1324, 3004]), dis.scale_rational(&Rational::from(7))).unwrap();
        a.try_add(&b).unwrap().try_add(&c).unwrap()
    }

    #[test]
    fn derived_matches_closed_form() {
        let m = CYModel::builtin();
        let r = derive_r_of_x(&m, 20).unwrap();
        assert_eq!(r, closed_form());
        assert_eq!(r.eval(&Rational::zero()).unwrap(), Rational::from(7));
    }

    #[test]
    fn relation_holds_at_the_conifold() {
        let m = CYModel::builtin();
        let f = build_conifold_frame(&m, 10).unwrap();
        let rs = r_series(&m, &f).unwrap();
        let n = rs.order();
        assert!(n >= 5);
        assert!(f.expand_ratfn(&closed_form(), n).unwrap().sub(&rs).truncate(n).is_zero());
    }

    #[test]
    fn too_short_series_rejected() {
        let m = CYModel::builtin();
        assert!(matches!(derive_r_of_x(&m, 8), Err(AnomalyError::RationalReconstruction(_))));
    }
}
