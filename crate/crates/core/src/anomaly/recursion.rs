use super::ring::{Chart, YYPoly};
use super::{AnomalyError, PropagatorFrame, YYRing};
use crate::exact::{FactoredFraction, Rational};
use crate::mirror::genus_one_rho;
use crate::picard_fuchs::CYModel;

/// `P^(g)_n` for `n = 0, 1, 2` in the UV chart (`P_0` is absent at genus 1).
#[derive(Debug, Clone)]
pub struct GenusData {
    pub genus: usize,
    pub p0: Option<YYPoly>,
    pub p1: YYPoly,
    pub p2: YYPoly,
}

/// `P_{n+1} = theta P_n - n (1 + A_1) P_n + (1 - g)(2 + L) P_n + (2g - 2) B_1 P_n`.
pub fn covariant_step(ring: &YYRing, g: usize, n: usize, p: &YYPoly) -> YYPoly {
    let ch = p.chart();
    let a1 = ring.to_chart(&ring.gen(Chart::AB, 0), ch);
    let b1 = ring.to_chart(&ring.gen(Chart::AB, 1), ch);
    let g = g as i64;
    let two_l = ring.l.add(&FactoredFraction::from_int(&ring.basis, 2)).scale(&Rational::from(1 - g));
    let factor = a1
        .add(&ring.rational(ch, Rational::one()))
        .scale_rational(&Rational::from(-(n as i64)))
        .add(&ring.constant(ch, &two_l))
        .add(&b1.scale_rational(&Rational::from(2 * g - 2)));
    ring.theta(p).add(&factor.mul(p))
}

/// `P^(1)_1 = -A_1/2 - (3 + h11 - chi/12) B_1/2 + rho(x)` in the UV chart.
pub fn genus_one_p1(ring: &YYRing, model: &CYModel) -> Result<YYPoly, AnomalyError> {
    let rho = FactoredFraction::from_ratfn(&ring.basis, &genus_one_rho(model)).map_err(|e| AnomalyError::Model(e.to_string()))?;
    let a = model.x_side.w0_exponent();
    let ab = |i| ring.gen(Chart::AB, i);
    let p = ab(0)
        .scale_rational(&Rational::frac(-1, 2))
        .sub(&ab(1).scale_rational(&(a * Rational::frac(1, 2))))
        .add(&ring.constant(Chart::AB, &rho));
    Ok(ring.to_chart(&p, Chart::UV))
}

pub fn genus_one_data(ring: &YYRing, model: &CYModel) -> Result<GenusData, AnomalyError> {
    let p1 = genus_one_p1(ring, model)?;
    let p2 = covariant_step(ring, 1, 1, &p1);
    Ok(GenusData { genus: 1, p0: None, p1, p2 })
}

/// `Q = (P^(g-1)_2 + sum_r P^(g-r)_1 P^(r)_1) / 2` from genera `1..g-1`.
pub fn anomaly_rhs(lower: &[GenusData], g: usize) -> Result<YYPoly, AnomalyError> {
    let get = |h: usize| lower.iter().find(|d| d.genus == h).ok_or_else(|| AnomalyError::Model(format!("genus {h} data missing")));
    let mut q = get(g - 1)?.p2.clone();
    for r in 1..g {
        q = q.add(&get(g - r)?.p1.mul(&get(r)?.p1));
    }
    Ok(q.scale_rational(&Rational::frac(1, 2)))
}

/// Sign of the `(2 + L) Q_2` term in the `v_2` equation; `Derived` is what
/// the chain rule through the UV chart gives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum V2Sign {
    Derived,
    Printed,
}

/// Integrate `dP/dv1 = -Q0`, `dP/dv2 = Q1 -/+ (2 + L) Q2`, `dP/dv3 = Q2` and
/// normalize so that `P` vanishes at the vanishing point of the propagators.
pub fn integrate_pg(ring: &YYRing, props: &PropagatorFrame, g: usize, lower: &[GenusData], sign: V2Sign) -> Result<YYPoly, AnomalyError> {
    let q = ring.to_chart(&anomaly_rhs(lower, g)?, Chart::UV);
    let parts = q.split_var(0);
    if parts.len() > 3 {
        return Err(AnomalyError::Integrability { genus: g, detail: format!("rhs has degree {} in u", parts.len() - 1) });
    }
    let zero = YYPoly::zero(&ring.basis, Chart::UV);
    let qk = |k: usize| parts.get(k).cloned().unwrap_or_else(|| zero.clone());
    let two_l = ring.constant(Chart::UV, &ring.l.add(&FactoredFraction::from_int(&ring.basis, 2)));
    let grad = [
        qk(0).neg(),
        match sign {
            V2Sign::Derived => qk(1).sub(&two_l.mul(&qk(2))),
            V2Sign::Printed => qk(1).add(&two_l.mul(&qk(2))),
        },
        qk(2),
    ];
    for i in 0..3 {
        for j in (i + 1)..3 {
            if grad[i].partial(j + 1) != grad[j].partial(i + 1) {
                return Err(AnomalyError::Integrability { genus: g, detail: format!("d/dv{} vs d/dv{}", j + 1, i + 1) });
            }
        }
    }
    let mut p = grad[0].integrate(1);
    for k in 1..3 {
        let rest = grad[k].sub(&p.partial(k + 1));
        if (1..=k).any(|j| rest.depends_on(j)) {
            return Err(AnomalyError::Integrability { genus: g, detail: format!("v{} residual depends on earlier variables", k + 1) });
        }
        p = p.add(&rest.integrate(k + 1));
    }
    let at = eval_at_vanishing_point(ring, props, &p);
    let p = p.sub(&ring.constant(Chart::UV, &at));
    Ok(p)
}

/// `P(v1*, v2*, v3*)` for a u-free polynomial.
pub fn eval_at_vanishing_point(ring: &YYRing, props: &PropagatorFrame, p: &YYPoly) -> FactoredFraction {
    let imgs: [YYPoly; 4] = std::array::from_fn(|i| match i {
        0 => ring.rational(Chart::UV, Rational::zero()),
        _ => ring.constant(Chart::UV, &props.vanishing_point[i - 1]),
    });
    p.substitute(&imgs).as_constant().expect("constant after substitution")
}

/// `P_0, P_1, P_2` from the full `P_0 = P + (x^3 C)^(g-1) f_g`.
pub fn genus_data(ring: &YYRing, g: usize, p: YYPoly) -> GenusData {
    let p1 = covariant_step(ring, g, 0, &p);
    let p2 = covariant_step(ring, g, 1, &p1);
    GenusData { genus: g, p0: Some(p), p1, p2 }
}

/// `P^(2), ..., P^(max_genus)` with every holomorphic ambiguity `f_g` set to zero.
pub fn solve_recursion(ring: &YYRing, props: &PropagatorFrame, model: &CYModel, max_genus: usize) -> Result<Vec<GenusData>, AnomalyError> {
    let mut data = vec![genus_one_data(ring, model)?];
    for g in 2..=max_genus {
        let p = integrate_pg(ring, props, g, &data, V2Sign::Derived)?;
        log::info!("P^({g}): {:?} (terms, max numerator degree, max denominator exponent)", p.size_report());
        data.push(genus_data(ring, g, p));
    }
    Ok(data)
}

/// `dP/dA_1 + Q` in the AB chart; zero when `P` solves the anomaly equation.
pub fn anomaly_defect(ring: &YYRing, p: &YYPoly, lower: &[GenusData], g: usize) -> Result<YYPoly, AnomalyError> {
    let pab = ring.to_chart(p, Chart::AB);
    let q = ring.to_chart(&anomaly_rhs(lower, g)?, Chart::AB);
    Ok(pab.partial(0).add(&q))
}

/// `2 dP/dA1 - (dP/dB1 + (dB2/dB1) dP/dB2 + (dB3/dB1) dP/dB3)` in the AB
/// chart, the ratios taken along the direction `u`; zero for u-free `P`.
pub fn u_defect(ring: &YYRing, p: &YYPoly) -> YYPoly {
    let pab = ring.to_chart(p, Chart::AB);
    let du = ring.ab_u_derivatives();
    let ratio = |i: usize| du[i].clone();
    pab.partial(0)
        .scale_rational(&Rational::from(2))
        .sub(&pab.partial(1).add(&ratio(2).mul(&pab.partial(2))).add(&ratio(3).mul(&pab.partial(3))))
}

/// `(x^3 C)^(1-g) P` as the non-ambiguous part of `F^(g)`.
/// `P + (x^3 C)^(g-1) f_g`, the ring image of the complete `F^(g)`.
pub fn with_ambiguity(ring: &YYRing, g: usize, p: &YYPoly, f: &FactoredFraction) -> YYPoly {
    p.add(&ring.constant(p.chart(), &ring.x3c.pow(g as u32 - 1).mul(f)))
}

pub fn weight_factor(ring: &YYRing, g: usize) -> FactoredFraction {
    ring.x3c.try_inv().unwrap().pow(g as u32 - 1)
}
