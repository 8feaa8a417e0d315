use super::ring::{Chart, YYPoly};
use super::AnomalyError;
use crate::exact::{FactorBasis, FactoredFraction, Poly, Rational, RationalFunction};
use crate::mirror::TopologicalFrame;
use crate::picard_fuchs::CYModel;
use crate::series::TruncatedSeries;
use crate::exact::Field;
use std::sync::Arc;

/// The differential ring `Q(x)[A1, B1, B2, B3]` of one model together with
/// its second chart `Q(x)[u, v1, v2, v3]`.
#[derive(Debug, Clone)]
pub struct YYRing {
    pub basis: Arc<FactorBasis>,
    /// `x^3 C_xxx`
    pub x3c: FactoredFraction,
    /// `theta_x log(x C_xxx)`
    pub l: FactoredFraction,
    pub r: FactoredFraction,
    /// `B_4 + r_1 B_3 + r_2 B_2 + r_3 B_1 + r_4 = 0`
    pub rk: Vec<FactoredFraction>,
    theta_ab: [YYPoly; 4],
    theta_uv: [YYPoly; 4],
    ab_in_uv: [YYPoly; 4],
    uv_in_ab: [YYPoly; 4],
}

/// The denominators that can occur: `x`, `x - x_app` and the discriminant.
pub fn model_basis(model: &CYModel) -> Result<Arc<FactorBasis>, AnomalyError> {
    let dis = &model.discriminant;
    let lead = dis.leading().cloned().ok_or_else(|| AnomalyError::Model("empty discriminant".into()))?;
    let dis = dis.scale(&lead.recip().map_err(|e| AnomalyError::Model(e.to_string()))?);
    let app = Poly::from_rationals(vec![-model.apparent_point.clone(), Rational::one()]);
    FactorBasis::new("x", &[("x", Poly::x()), ("x-3", app), ("dis", dis)]).map_err(|e| AnomalyError::Model(e.to_string()))
}

fn ff(basis: &Arc<FactorBasis>, f: &RationalFunction) -> Result<FactoredFraction, AnomalyError> {
    FactoredFraction::from_ratfn(basis, f).map_err(|e| AnomalyError::Model(format!("{f} does not split over the factor basis: {e}")))
}

/// `theta_x log(x C_xxx)` as a rational function.
pub fn theta_log_xc(model: &CYModel) -> RationalFunction {
    let x3c = model.x3c();
    x3c.theta().try_div(&x3c).unwrap().try_sub(&RationalFunction::constant("x", Rational::from(2))).unwrap()
}

impl YYRing {
    pub fn new(model: &CYModel, r: &RationalFunction) -> Result<Self, AnomalyError> {
        let basis = model_basis(model)?;
        let x3c = ff(&basis, &model.x3c())?;
        let l = ff(&basis, &theta_log_xc(model))?;
        let r = ff(&basis, r)?;
        let rk = model.b_reduction_coeffs().iter().map(|f| ff(&basis, f)).collect::<Result<Vec<_>, _>>()?;
        if rk.len() != 4 {
            return Err(AnomalyError::Model("operator must have order four".into()));
        }
        let b = &basis;
        let c = |f: &FactoredFraction, ch: Chart| YYPoly::constant(f.clone(), ch);
        let q = |n: i64, ch: Chart| YYPoly::from_rational(b, ch, Rational::from(n));
        let ab = |i| YYPoly::gen(b, Chart::AB, i);
        let (a1, b1, b2, b3) = (ab(0), ab(1), ab(2), ab(3));
        let a = Chart::AB;
        // A2 = -4 B2 - 2 B1 (A1 - B1 - 1) + L (A1 + 2 B1 + 4) + r
        let s_xx = a1.add(&b1.scale_rational(&Rational::from(2))).add(&q(4, a));
        let a2 = b2
            .scale_rational(&Rational::from(-4))
            .sub(&b1.mul(&a1.sub(&b1).sub(&q(1, a))).scale_rational(&Rational::from(2)))
            .add(&s_xx.scale(&l))
            .add(&c(&r, a));
        let b4 = b3.scale(&rk[0]).add(&b2.scale(&rk[1])).add(&b1.scale(&rk[2])).add(&c(&rk[3], a)).neg();
        let theta_ab = [a2.sub(&a1.mul(&a1)), b2.sub(&b1.mul(&b1)), b3.sub(&b1.mul(&b2)), b4.sub(&b1.mul(&b3))];

        let uv = |i| YYPoly::gen(b, Chart::UV, i);
        let (u, v1, v2, v3) = (uv(0), uv(1), uv(2), uv(3));
        let w = Chart::UV;
        // 2 v1 + L v1 - v2 + 3 L + r - 1
        let tail = |v1: &YYPoly, v2: &YYPoly, ch: Chart| {
            v1.scale_rational(&Rational::from(2))
                .add(&v1.scale(&l))
                .sub(v2)
                .add(&c(&l.scale(&Rational::from(3)).add(&r).sub(&FactoredFraction::one(b)), ch))
        };
        let ab_in_uv = [
            v1.sub(&u.scale_rational(&Rational::from(2))).sub(&q(1, w)),
            u.clone(),
            v2.add(&u.mul(&v1)),
            v3.add(&u.mul(&tail(&v1, &v2, w))),
        ];
        let v1_ab = a1.add(&b1.scale_rational(&Rational::from(2))).add(&q(1, a));
        let v2_ab = b2.sub(&b1.mul(&v1_ab));
        let v3_ab = b3.sub(&b1.mul(&tail(&v1_ab, &v2_ab, a)));
        let uv_in_ab = [b1.clone(), v1_ab, v2_ab, v3_ab];
        let theta_uv: [YYPoly; 4] = std::array::from_fn(|i| uv_in_ab[i].theta(&theta_ab).substitute(&ab_in_uv));
        Ok(YYRing { basis, x3c, l, r, rk, theta_ab, theta_uv, ab_in_uv, uv_in_ab })
    }

    pub fn gen(&self, chart: Chart, i: usize) -> YYPoly {
        YYPoly::gen(&self.basis, chart, i)
    }

    pub fn constant(&self, chart: Chart, c: &FactoredFraction) -> YYPoly {
        YYPoly::constant(c.clone(), chart)
    }

    pub fn rational(&self, chart: Chart, c: Rational) -> YYPoly {
        YYPoly::from_rational(&self.basis, chart, c)
    }

    pub fn x_power(&self, e: i32) -> FactoredFraction {
        FactoredFraction::basis_power(&self.basis, 0, e)
    }

    pub fn theta(&self, p: &YYPoly) -> YYPoly {
        match p.chart() {
            Chart::AB => p.theta(&self.theta_ab),
            Chart::UV => p.theta(&self.theta_uv),
        }
    }

    pub fn theta_images(&self, chart: Chart) -> &[YYPoly; 4] {
        match chart {
            Chart::AB => &self.theta_ab,
            Chart::UV => &self.theta_uv,
        }
    }

    /// `u_i` with `dGen_i/du = u_i` for the AB generators, written in the AB chart.
    pub fn ab_u_derivatives(&self) -> [YYPoly; 4] {
        std::array::from_fn(|i| self.to_chart(&self.ab_in_uv[i].partial(0), Chart::AB))
    }

    pub fn to_chart(&self, p: &YYPoly, chart: Chart) -> YYPoly {
        match (p.chart(), chart) {
            (a, b) if a == b => p.clone(),
            (Chart::AB, Chart::UV) => p.substitute(&self.ab_in_uv),
            _ => p.substitute(&self.uv_in_ab),
        }
    }

    /// Local series of `u, v1, v2, v3` (or `A1, B1, B2, B3`) in a frame.
    pub fn generator_limits<C: Field>(&self, frame: &TopologicalFrame<C>, chart: Chart) -> Result<[TruncatedSeries<C>; 4], AnomalyError> {
        let ab = frame.ab_limits()?;
        let gens = [ab.a1.clone(), ab.b1().clone(), ab.b2().clone(), ab.b3().clone()];
        if chart == Chart::AB {
            return Ok(gens);
        }
        let order = gens.iter().map(|s| s.order()).min().unwrap();
        let imgs: Vec<TruncatedSeries<C>> =
            self.uv_in_ab.iter().map(|p| eval_series(p, frame, &gens, order)).collect::<Result<_, _>>()?;
        Ok([imgs[0].clone(), imgs[1].clone(), imgs[2].clone(), imgs[3].clone()])
    }
}

/// Local expansion of a factored coefficient.
pub fn expand_coeff<C: Field>(c: &FactoredFraction, frame: &TopologicalFrame<C>, order: i64) -> Result<TruncatedSeries<C>, AnomalyError> {
    Ok(frame.expand_fraction(&c.numerator(), &c.denominator(), order)?)
}

/// Evaluate a ring element on local series for its four generators.
pub fn eval_series<C: Field>(
    p: &YYPoly,
    frame: &TopologicalFrame<C>,
    gens: &[TruncatedSeries<C>],
    order: i64,
) -> Result<TruncatedSeries<C>, AnomalyError> {
    let proto = frame.proto().clone();
    let var = frame.var().to_string();
    let mut powers: Vec<Vec<TruncatedSeries<C>>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut pw = vec![TruncatedSeries::one(&var, &proto, order)];
        for _ in 0..p.degree_in(i) {
            let next = pw.last().unwrap().mul(g);
            pw.push(next);
        }
        powers.push(pw);
    }
    let mut acc = TruncatedSeries::zero(&var, &proto, order);
    for (m, c) in p.terms() {
        let mut t = expand_coeff(c, frame, order)?;
        for i in 0..4 {
            if m[i] > 0 {
                t = t.mul(&powers[i][m[i] as usize]);
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::build_frame;
    use crate::picard_fuchs::PointKind;

    pub(crate) fn closed_form_r() -> RationalFunction {
        let dis = Poly::from_ints(&[1, -57, -289, 1]);
        let a = RationalFunction::constant("x", Rational::from(11));
        let b = RationalFunction::new("x", Poly::from_ints(&[-36]), Poly::from_ints(&[-21, 7])).unwrap();
        let c = RationalFunction::new("x", Poly::from_ints(&[-40, 1324, 3004]), dis.scale_rational(&Rational::from(7))).unwrap();
        a.try_add(&b).unwrap().try_add(&c).unwrap()
    }

    fn ring() -> YYRing {
        YYRing::new(&CYModel::builtin(), &closed_form_r()).unwrap()
    }

    #[test]
    fn chart_round_trip() {
        let r = ring();
        for i in 0..4 {
            let g = r.gen(Chart::AB, i);
            assert_eq!(r.to_chart(&r.to_chart(&g, Chart::UV), Chart::AB), g);
            let h = r.gen(Chart::UV, i);
            assert_eq!(r.to_chart(&r.to_chart(&h, Chart::AB), Chart::UV), h);
        }
    }

    #[test]
    fn theta_on_generators() {
        let r = ring();
        let g = |i| r.gen(Chart::AB, i);
        assert_eq!(r.theta(&g(1)), g(2).sub(&g(1).mul(&g(1))));
        assert!(r.theta(&r.rational(Chart::AB, Rational::from(5))).is_zero());
    }

    #[test]
    fn uv_theta_images() {
        let r = ring();
        let v = |i| r.gen(Chart::UV, i);
        let l = r.constant(Chart::UV, &r.l);
        // theta v1 = -v1^2 + (2 + L) v1 - 2 v2 + 3L + r - 1, theta v2 = v3 - v1 v2
        let two = r.rational(Chart::UV, Rational::from(2));
        let c = r.constant(Chart::UV, &r.l.scale(&Rational::from(3)).add(&r.r).sub(&FactoredFraction::one(&r.basis)));
        let tv1 = v(1).mul(&v(1)).neg().add(&two.add(&l).mul(&v(1))).sub(&v(2).scale_rational(&Rational::from(2))).add(&c);
        assert_eq!(r.theta(&v(1)), tv1);
        assert_eq!(r.theta(&v(2)), v(3).sub(&v(1).mul(&v(2))));
        // the v-generators close among themselves: no u in their derivatives
        for i in 1..4 {
            assert!(!r.theta(&v(i)).depends_on(0));
        }
    }

    #[test]
    fn theta_commutes_with_chart_change() {
        let r = ring();
        let p = r.gen(Chart::AB, 0).mul(&r.gen(Chart::AB, 3)).add(&r.gen(Chart::AB, 2).pow(2));
        let lhs = r.to_chart(&r.theta(&p), Chart::UV);
        let rhs = r.theta(&r.to_chart(&p, Chart::UV));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn limits_satisfy_theta_relations() {
        let m = CYModel::builtin();
        let r = YYRing::new(&m, &closed_form_r()).unwrap();
        let f = build_frame(&m, PointKind::LargeX, 14).unwrap();
        let g = r.generator_limits(&f, Chart::UV).unwrap();
        for i in 0..4 {
            let lhs = f.theta(&g[i]);
            let rhs = eval_series(&r.theta(&r.gen(Chart::UV, i)), &f, &g, 14).unwrap();
            let n = lhs.order().min(rhs.order());
            assert!(n >= 8);
            assert_eq!(lhs.truncate(n), rhs.truncate(n), "generator {i}");
        }
    }
}
