use super::ring::{Chart, YYPoly};
use super::{eval_series, expand_coeff, weight_factor, AnomalyError, YYRing};
use crate::exact::{FactoredFraction, Field, Rational};
use crate::mirror::TopologicalFrame;
use crate::series::TruncatedSeries;

/// One unknown of the holomorphic ambiguity with its basis function.
#[derive(Debug, Clone)]
pub struct AnsatzTerm {
    pub name: String,
    pub f: FactoredFraction,
}

/// `f_g = sum a_i x^i + sum b_i x^i/(x-3)^(2g-2) + sum c_i x^i/dis^(2g-2)` with
/// `i <= 2g-2`, `2g-3` and `6g-7` respectively.
pub fn ambiguity_ansatz(ring: &YYRing, g: usize) -> Vec<AnsatzTerm> {
    let b = &ring.basis;
    let e = -(2 * g as i32 - 2);
    let x = |i: usize| FactoredFraction::basis_power(b, 0, i as i32);
    let mut out = Vec::with_capacity(10 * g - 9);
    for i in 0..=2 * g - 2 {
        out.push(AnsatzTerm { name: format!("a{i}"), f: x(i) });
    }
    let p1 = FactoredFraction::basis_power(b, 1, e);
    for i in 0..=2 * g - 3 {
        out.push(AnsatzTerm { name: format!("b{i}"), f: x(i).mul(&p1) });
    }
    let p2 = FactoredFraction::basis_power(b, 2, e);
    for i in 0..=6 * g - 7 {
        out.push(AnsatzTerm { name: format!("c{i}"), f: x(i).mul(&p2) });
    }
    out
}

/// `f_g` as a single factored fraction once the coefficients are known.
pub fn assemble_ambiguity(ansatz: &[AnsatzTerm], values: &[Rational]) -> FactoredFraction {
    let b = ansatz[0].f.basis();
    ansatz.iter().zip(values).fold(FactoredFraction::zero(b), |acc, (t, v)| acc.add(&t.f.scale(v)))
}

/// A series in the flat coordinate that is affine in the ambiguity unknowns.
#[derive(Debug, Clone)]
pub struct AffineSeries<C: Field> {
    pub base: TruncatedSeries<C>,
    pub terms: Vec<TruncatedSeries<C>>,
}

impl<C: Field> AffineSeries<C> {
    /// Constant part and unknown coefficients of `[Y^n]`.
    pub fn coeff(&self, n: i64) -> Result<(C, Vec<C>), AnomalyError> {
        let c = self.base.try_coeff(n)?;
        let v = self.terms.iter().map(|t| t.try_coeff(n)).collect::<Result<Vec<_>, _>>()?;
        Ok((c, v))
    }

    pub fn order(&self) -> i64 {
        self.terms.iter().map(|t| t.order()).fold(self.base.order(), i64::min)
    }

    pub fn evaluate(&self, values: &[Rational]) -> TruncatedSeries<C> {
        self.terms.iter().zip(values).fold(self.base.clone(), |acc, (t, v)| acc.add(&t.scale_rational(v)))
    }
}

/// `w0^(2g-2) ((x^3 C)^(1-g) P + f_g)` in the frame's flat coordinate.
pub fn topological_fg<C: Field>(
    ring: &YYRing,
    frame: &TopologicalFrame<C>,
    g: usize,
    p: &YYPoly,
    ansatz: &[AnsatzTerm],
    order: i64,
) -> Result<AffineSeries<C>, AnomalyError> {
    let gens = ring.generator_limits(frame, Chart::UV)?;
    let order = gens.iter().map(|s| s.order()).fold(order, i64::min);
    let w = frame.w0.truncate(order).powi(2 * g as i64 - 2)?;
    let finish = |s: TruncatedSeries<C>| -> Result<TruncatedSeries<C>, AnomalyError> { Ok(frame.to_flat(&s.mul(&w))?) };
    let base = finish(eval_series(&p.scale(&weight_factor(ring, g)), frame, &gens, order)?)?;
    let terms = ansatz.iter().map(|t| finish(expand_coeff(&t.f, frame, order)?)).collect::<Result<Vec<_>, _>>()?;
    Ok(AffineSeries { base, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anomaly::{build_propagators, derive_r_of_x, solve_recursion};
    use crate::mirror::build_frame;
    use crate::picard_fuchs::{CYModel, PointKind};

    #[test]
    fn ansatz_size() {
        let m = CYModel::builtin();
        let r = YYRing::new(&m, &derive_r_of_x(&m, 20).unwrap()).unwrap();
        for g in 2..=5 {
            assert_eq!(ambiguity_ansatz(&r, g).len(), 10 * g - 9);
        }
    }

    #[test]
    fn affine_series_is_linear() {
        let m = CYModel::builtin();
        let r = YYRing::new(&m, &derive_r_of_x(&m, 20).unwrap()).unwrap();
        let props = build_propagators(&r).unwrap();
        let data = solve_recursion(&r, &props, &m, 2).unwrap();
        let ans = ambiguity_ansatz(&r, 2);
        let frame = build_frame(&m, PointKind::LargeX, 10).unwrap();
        let aff = topological_fg(&r, &frame, 2, data[1].p0.as_ref().unwrap(), &ans, 10).unwrap();
        let vals: Vec<Rational> = (0..ans.len()).map(|i| Rational::frac(i as i64 + 1, 7)).collect();
        let direct = {
            let f = assemble_ambiguity(&ans, &vals);
            let p = data[1].p0.as_ref().unwrap().add(&r.constant(Chart::UV, &f.mul(&r.x3c)));
            topological_fg(&r, &frame, 2, &p, &[], 10).unwrap().base
        };
        let via = aff.evaluate(&vals);
        let n = direct.order().min(via.order());
        assert!(n >= 6);
        assert!(direct.sub(&via).truncate(n).is_zero());
    }
}
