use super::{MirrorError, TopologicalFrame};
use crate::exact::{Field, Rational, RationalFunction};
use crate::picard_fuchs::CYModel;
use crate::series::TruncatedSeries;

/// Coefficients `[q^d] f / d^k` for `d = 1..=dmax`.
pub fn instanton_part(f: &TruncatedSeries<Rational>, k: u32, dmax: i64) -> Result<Vec<Rational>, MirrorError> {
    (1..=dmax)
        .map(|d| {
            let c = f.try_coeff(d)?;
            Ok(c.mul_rational(&Rational::from(d).pow_i(-(k as i32))?))
        })
        .collect()
}

/// `N_0(d) = [q^d] K / d^3`.
pub fn genus_zero_invariants(model: &CYModel, frame: &TopologicalFrame<Rational>, dmax: i64) -> Result<Vec<Rational>, MirrorError> {
    instanton_part(&frame.quantum_yukawa(model)?, 3, dmax)
}

/// The coefficient-function part of `P^(1)_1 = -A_1/2 - a B_1/2 + rho(x)`, with
/// `a = 3 + h11 - chi/12`, `rho = -b/2 + a p/2 - theta log(dis)/12`,
/// `b = 1 + c2.H/12` and `f_1 = x^p` on the x side.
pub fn genus_one_rho(model: &CYModel) -> RationalFunction {
    let side = &model.x_side;
    let a = side.w0_exponent();
    let b = side.coordinate_exponent();
    let c = Rational::frac(-1, 2) * b + Rational::frac(1, 2) * a * Rational::from(side.f1_power);
    let dis = RationalFunction::from_poly("x", model.discriminant.clone());
    let tl = dis.theta().try_div(&dis).unwrap().scale(&Rational::frac(-1, 12));
    tl.try_add(&RationalFunction::constant("x", c)).unwrap()
}

/// `theta_x F_1` restricted to a frame, as a local series.
pub fn theta_f1_limit<C: Field>(model: &CYModel, frame: &TopologicalFrame<C>) -> Result<TruncatedSeries<C>, MirrorError> {
    let ab = frame.ab_limits()?;
    let order = ab.a1.order().min(ab.b1().order());
    let rho = frame.expand_ratfn(&genus_one_rho(model), order)?;
    let a = model.x_side.w0_exponent();
    Ok(ab.a1.scale_rational(&Rational::frac(-1, 2)).sub(&ab.b1().scale_rational(&(a * Rational::frac(1, 2)))).add(&rho))
}

/// `theta_Y F_1` in the flat coordinate of the frame.
pub fn genus_one_series<C: Field>(model: &CYModel, frame: &TopologicalFrame<C>) -> Result<TruncatedSeries<C>, MirrorError> {
    let p = theta_f1_limit(model, frame)?;
    frame.to_flat(&p.try_div(&frame.theta_t)?)
}

/// `N_1(d) = [Y^d] theta_Y F_1 / d`.
pub fn genus_one_invariants(model: &CYModel, frame: &TopologicalFrame<Rational>, dmax: i64) -> Result<Vec<Rational>, MirrorError> {
    instanton_part(&genus_one_series(model, frame)?, 1, dmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;
    use crate::mirror::build_frame;
    use crate::picard_fuchs::PointKind;

    #[test]
    fn rho_closed_form() {
        let m = CYModel::builtin();
        let rho = genus_one_rho(&m);
        // -4 + x(57 + 578x - 3x^2)/(12 dis)
        let extra = RationalFunction::new("x", Poly::from_ints(&[0, 57, 578, -3]), m.discriminant.scale_rational(&Rational::from(12))).unwrap();
        let expect = extra.try_add(&RationalFunction::constant("x", Rational::from(-4))).unwrap();
        assert_eq!(rho, expect);
    }

    #[test]
    fn genus_zero_both_sides() {
        let m = CYModel::builtin();
        let fx = build_frame(&m, PointKind::LargeX, 8).unwrap();
        let over = |v: &[i64]| -> Vec<Rational> {
            v.iter().enumerate().map(|(i, &c)| Rational::frac(c, ((i + 1) as i64).pow(3))).collect()
        };
        assert_eq!(genus_zero_invariants(&m, &fx, 4).unwrap(), over(&[196, 9996, 344176, 12685708]));
        let fz = build_frame(&m, PointKind::LargeZ, 8).unwrap();
        assert_eq!(genus_zero_invariants(&m, &fz, 3).unwrap(), over(&[588, 97412, 15765456]));
    }

    #[test]
    fn genus_one_classical_terms() {
        let m = CYModel::builtin();
        let fx = build_frame(&m, PointKind::LargeX, 8).unwrap();
        assert_eq!(genus_one_series(&m, &fx).unwrap().coeff(0), "-7/2".parse().unwrap());
        let fz = build_frame(&m, PointKind::LargeZ, 8).unwrap();
        assert_eq!(genus_one_series(&m, &fz).unwrap().coeff(0), "-7/3".parse().unwrap());
    }
}

#[cfg(test)]
mod genus_one_checks {
    use super::*;
    use crate::gv::gw_to_gv;
    use crate::mirror::build_frame;
    use crate::picard_fuchs::PointKind;
    use rug::Integer;

    fn n1(kind: PointKind, dmax: i64) -> Vec<Integer> {
        let m = CYModel::builtin();
        let f = build_frame(&m, kind, dmax + 4).unwrap();
        let n = vec![genus_zero_invariants(&m, &f, dmax).unwrap(), genus_one_invariants(&m, &f, dmax).unwrap()];
        gw_to_gv("", &n).unwrap().n[1].clone()
    }

    #[test]
    fn genus_one_x() {
        let v: Vec<i64> = vec![0, 0, 0, 0, 588, 99960];
        assert_eq!(n1(PointKind::LargeX, 6), v.into_iter().map(Integer::from).collect::<Vec<_>>());
    }

    #[test]
    fn genus_one_x_prime() {
        let v: Vec<i64> = vec![0, 0, 196, 99960, 34149668];
        assert_eq!(n1(PointKind::LargeZ, 5), v.into_iter().map(Integer::from).collect::<Vec<_>>());
    }

    /// The z-chart potential written directly:
    /// `F~1 = 1/2 [-a log(w~0/z) - log tau - log(dis~)/6 - (b~ - 1) log z]`, with
    /// `tau = theta_z T~`; `log z` splits into `log(z/qt) + log qt`, the second
    /// giving the classical `-(b~ - 1)/2` in `theta_qt F~1`.
    #[test]
    fn gluing_with_z_chart_formula() {
        let m = CYModel::builtin();
        let f = build_frame(&m, PointKind::LargeZ, 10).unwrap();
        let side = &m.z_side;
        let a = side.w0_exponent();
        let bm1 = side.coordinate_exponent() - Rational::one();
        let half = Rational::frac(1, 2);
        let w0_over_z = f.w0.shift(-1);
        let tau = f.theta_t.neg();
        let dis = TruncatedSeries::from_poly("z", &m.discriminant_z(), 10);
        let z_over_q = f.y_of_s.shift(-1).try_inv().unwrap();
        let g = w0_over_z.log().unwrap().scale_rational(&-a)
            .sub(&tau.log().unwrap())
            .sub(&dis.log().unwrap().scale_rational(&Rational::frac(1, 6)))
            .sub(&z_over_q.log().unwrap().scale_rational(&bm1))
            .scale_rational(&half);
        let direct = f.to_flat(&g).unwrap().theta().add_constant(&(-bm1 * half));
        let generic = genus_one_series(&m, &f).unwrap();
        let n = direct.order().min(generic.order());
        assert!(n >= 8);
        assert_eq!(direct.truncate(n), generic.truncate(n));
    }
}
