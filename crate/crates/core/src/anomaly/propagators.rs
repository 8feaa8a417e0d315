use super::ring::{Chart, YYPoly};
use super::{AnomalyError, YYRing};
use crate::exact::{FactoredFraction, Rational};

/// The propagators as ring elements together with their vanishing point.
#[derive(Debug, Clone)]
pub struct PropagatorFrame {
    pub sxx: YYPoly,
    pub sx: YYPoly,
    pub s: YYPoly,
    pub h1: FactoredFraction,
    pub h2: FactoredFraction,
    /// `(v1*, v2*, v3*)` on the slice `u = 0`
    pub vanishing_point: [FactoredFraction; 3],
}

/// `C_xxx` itself.
pub fn yukawa(ring: &YYRing) -> FactoredFraction {
    ring.x3c.mul(&ring.x_power(-3))
}

/// `D_x` on a ring element carrying `upper` upper indices and `L^weight`,
/// with `Gamma -> A_1/x` and `K_x -> -B_1/x`.
pub fn covariant_x(ring: &YYRing, p: &YYPoly, upper: i64, weight: i64) -> YYPoly {
    let ch = p.chart();
    let a1 = ring.to_chart(&ring.gen(Chart::AB, 0), ch);
    let b1 = ring.to_chart(&ring.gen(Chart::AB, 1), ch);
    let conn = a1.scale_rational(&Rational::from(upper)).sub(&b1.scale_rational(&Rational::from(weight)));
    ring.theta(p).add(&conn.mul(p)).scale(&ring.x_power(-1))
}

/// `S^x` from `1/2 D S^xx + 1/2 (S^xx)^2 C + H_1`.
pub fn sx_from_sxx(ring: &YYRing, sxx: &YYPoly, h1: &FactoredFraction) -> YYPoly {
    let half = Rational::frac(1, 2);
    covariant_x(ring, sxx, 2, -2)
        .scale_rational(&half)
        .add(&sxx.mul(sxx).scale(&yukawa(ring)).scale_rational(&half))
        .add(&YYPoly::constant(h1.clone(), sxx.chart()))
}

pub fn build_propagators(ring: &YYRing) -> Result<PropagatorFrame, AnomalyError> {
    let ab = |i| ring.gen(Chart::AB, i);
    let q = |n: i64| ring.rational(Chart::AB, Rational::from(n));
    let inv_x3c = ring.x3c.try_inv().map_err(|e| AnomalyError::Model(e.to_string()))?;
    let x = ring.x_power(1);
    let half = Rational::frac(1, 2);
    let sxx = ab(0).add(&ab(1).scale_rational(&Rational::from(2))).add(&q(4)).scale(&inv_x3c.mul(&x).mul(&x).neg());
    let sx = ab(1).scale_rational(&Rational::from(3)).add(&ab(2)).add(&q(2)).scale(&inv_x3c.mul(&x));
    let twelve = FactoredFraction::from_int(&ring.basis, 12);
    let h1 = inv_x3c.mul(&x).mul(&twelve.sub(&ring.r)).scale(&Rational::frac(-1, 2));
    let h2 = h1.mul(&ring.x_power(-1)).neg();
    let kx = ab(1).scale(&ring.x_power(-1)).neg();
    let s = kx
        .scale(&h1)
        .add(&covariant_x(ring, &sx, 1, -2).scale_rational(&half))
        .add(&sxx.mul(&sx).scale(&yukawa(ring)).scale_rational(&half))
        .add(&ring.constant(Chart::AB, &h2));
    let vp = vanishing_point(ring, &sxx, &sx, &s)?;
    Ok(PropagatorFrame { sxx, sx, s, h1, h2, vanishing_point: vp })
}

/// Restrict to `u = 0` with `v1, v2` fixed and return the single root in `v3`.
fn vanishing_point(ring: &YYRing, sxx: &YYPoly, sx: &YYPoly, s: &YYPoly) -> Result<[FactoredFraction; 3], AnomalyError> {
    let b = &ring.basis;
    let slice = |p: &YYPoly, vals: &[Option<FactoredFraction>; 4]| -> YYPoly {
        let imgs: [YYPoly; 4] = std::array::from_fn(|i| match &vals[i] {
            Some(c) => YYPoly::constant(c.clone(), Chart::UV),
            None => ring.gen(Chart::UV, i),
        });
        ring.to_chart(p, Chart::UV).substitute(&imgs)
    };
    let zero = FactoredFraction::zero(b);
    // S^xx is linear in v1 alone on u = 0
    let v1 = linear_root(&slice(sxx, &[Some(zero.clone()), None, None, None]), 1)?;
    let v2 = linear_root(&slice(sx, &[Some(zero.clone()), Some(v1.clone()), None, None]), 2)?;
    let v3 = linear_root(&slice(s, &[Some(zero.clone()), Some(v1.clone()), Some(v2.clone()), None]), 3)?;
    Ok([v1, v2, v3])
}

fn linear_root(p: &YYPoly, i: usize) -> Result<FactoredFraction, AnomalyError> {
    let parts = p.split_var(i);
    if parts.len() != 2 || (0..4).any(|j| j != i && p.depends_on(j)) {
        return Err(AnomalyError::VanishingPoint(format!("not linear in generator {i}: {p}")));
    }
    let c0 = parts[0].as_constant().unwrap();
    let c1 = parts[1].as_constant().unwrap();
    c0.neg().try_div(&c1).map_err(|e| AnomalyError::VanishingPoint(e.to_string()))
}
