use super::ring::{Chart, YYPoly};
use super::{covariant_step, yukawa, GenusData, PropagatorFrame, YYRing};
use crate::exact::{FactoredFraction, Rational};

/// The genus two Feynman expansion in propagators, times `x^3 C`, in the UV chart.
pub fn genus_two_from_graphs(ring: &YYRing, props: &PropagatorFrame, g1: &GenusData, chi: i64) -> YYPoly {
    let ch = Chart::AB;
    let c = yukawa(ring);
    let xi = ring.x_power(-1);
    let f1_1 = ring.to_chart(&g1.p1, ch).scale(&xi);
    let f1_2 = ring.to_chart(&g1.p2, ch).scale(&xi.mul(&xi));
    let p4 = covariant_step(ring, 0, 3, &ring.rational(ch, Rational::one()));
    let f0_4 = p4.scale(&c.mul(&xi));
    let (sxx, sx, s) = (&props.sxx, &props.sx, &props.s);
    let q = |n: i64, d: i64| Rational::frac(n, d);
    let chi24 = q(chi, 24);
    let terms = [
        (q(5, 24), sxx.pow(3).scale(&c.mul(&c))),
        (q(-1, 8), sxx.pow(2).mul(&f0_4)),
        (q(-1, 2), sxx.pow(2).mul(&f1_1).scale(&c)),
        (q(1, 2), sxx.mul(&f1_1).mul(&f1_1)),
        (q(1, 2), sxx.mul(&f1_2)),
        (chi24.clone(), sx.mul(&f1_1)),
        (q(-chi, 48), sx.mul(sxx).scale(&c)),
        (chi24.clone() * (chi24 - Rational::one()), s.clone()),
    ];
    let mut out = YYPoly::zero(&ring.basis, ch);
    for (k, t) in terms {
        out = out.add(&t.scale_rational(&k));
    }
    let x3c: &FactoredFraction = &ring.x3c;
    ring.to_chart(&out.scale(x3c), Chart::UV)
}
