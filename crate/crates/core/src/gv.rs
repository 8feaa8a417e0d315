//! Gromov-Witten potentials, Gopakumar-Vafa invariants and the multiple-cover conversion.

use crate::exact::Rational;
use rug::Integer;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GvError {
    #[error("n_{g}({d}) = {value} is not an integer")]
    NonIntegral { g: usize, d: usize, value: String },
    #[error("constant map term needs g >= 2, got {0}")]
    GenusTooLow(usize),
    #[error("input table is incomplete: {0}")]
    Incomplete(String),
}

/// `N_g(d)` for `d = 1..=coeffs.len()` plus the degree-zero term when known.
#[derive(Debug, Clone, PartialEq)]
pub struct GwPotential {
    pub genus: usize,
    pub side: String,
    pub constant_term: Option<Rational>,
    pub coeffs: Vec<Rational>,
}

impl GwPotential {
    pub fn degree(&self, d: usize) -> &Rational {
        &self.coeffs[d - 1]
    }
}

/// `n[g][d-1]` for one side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GvTable {
    pub side: String,
    pub n: Vec<Vec<Integer>>,
}

impl GvTable {
    pub fn zeros(side: &str, max_genus: usize, max_degree: usize) -> Self {
        GvTable { side: side.into(), n: vec![vec![Integer::new(); max_degree]; max_genus + 1] }
    }

    pub fn max_genus(&self) -> usize {
        self.n.len().saturating_sub(1)
    }

    pub fn max_degree(&self) -> usize {
        self.n.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, g: usize, d: usize) -> Option<&Integer> {
        self.n.get(g).and_then(|r| r.get(d.checked_sub(1)?))
    }
}

fn bernoulli_table() -> &'static Mutex<Vec<Rational>> {
    static T: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

fn binomial(n: usize, k: usize) -> Integer {
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// `B_n` with `B_1 = -1/2`, from `sum_{j<=n} C(n+1, j) B_j = 0`.
pub fn bernoulli(n: usize) -> Rational {
    let mut t = bernoulli_table().lock().unwrap();
    while t.len() <= n {
        let m = t.len();
        let mut s = Rational::zero();
        for (j, b) in t.iter().enumerate() {
            s = s + Rational::from_integer(binomial(m + 1, j)) * b.clone();
        }
        let b = -s * Rational::frac(1, m as i64 + 1);
        t.push(b);
    }
    t[n].clone()
}

fn factorial(n: usize) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// `(chi/2) (-1)^g |B_2g B_2g-2| / (2g (2g-2) (2g-2)!)`.
pub fn constant_map_term(g: usize, chi: i64) -> Result<Rational, GvError> {
    if g < 2 {
        return Err(GvError::GenusTooLow(g));
    }
    let b = (bernoulli(2 * g) * bernoulli(2 * g - 2)).abs();
    let den = Rational::from((2 * g * (2 * g - 2)) as i64) * Rational::from_integer(factorial(2 * g - 2));
    let sign = if g % 2 == 0 { 1 } else { -1 };
    Ok(Rational::frac(chi * sign, 2) * b.checked_div(&den).unwrap())
}

/// The leading conifold coefficient `|B_2g| / (2g (2g-2))`.
pub fn gap_constant(g: usize) -> Rational {
    bernoulli(2 * g).abs().checked_div(&Rational::from((2 * g * (2 * g - 2)) as i64)).unwrap()
}

/// `a[h][m] = [lambda^2m] (2 sin(lambda/2) / lambda)^(2h-2)` for `h, m <= max`.
pub fn sine_coefficients(max: usize) -> Vec<Vec<Rational>> {
    let len = max + 1;
    // s(mu) = sum_k (-1)^k mu^k / (4^k (2k+1)!), mu = lambda^2
    let s: Vec<Rational> = (0..len)
        .map(|k| {
            let den = Integer::from(Integer::u_pow_u(4, k as u32)) * factorial(2 * k + 1);
            let v = Rational::from_integer(Integer::from(1)).checked_div(&Rational::from_integer(den)).unwrap();
            if k % 2 == 0 { v } else { -v }
        })
        .collect();
    let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        (0..len).map(|n| (0..=n).fold(Rational::zero(), |acc, i| acc + a[i].clone() * b[n - i].clone())).collect()
    };
    // 1/s by the usual recursion, s_0 = 1
    let mut inv = vec![Rational::zero(); len];
    inv[0] = Rational::one();
    for n in 1..len {
        inv[n] = -(1..=n).fold(Rational::zero(), |acc, i| acc + s[i].clone() * inv[n - i].clone());
    }
    let sq = mul(&s, &s);
    let mut out = Vec::with_capacity(len);
    let mut cur = mul(&inv, &inv);
    for _ in 0..len {
        out.push(cur.clone());
        cur = mul(&cur, &sq);
    }
    out
}

pub fn k_power(k: usize, e: i64) -> Rational {
    Rational::from(k as i64).pow_i(e as i32).unwrap()
}

/// `N_g(d) = sum_{k | d} sum_{h <= g} k^(2g-3) a_{h, g-h} n_h(d/k)`.
pub fn gv_to_gw(table: &GvTable) -> Vec<Vec<Rational>> {
    let gmax = table.max_genus();
    let dmax = table.max_degree();
    let a = sine_coefficients(gmax);
    let mut out = vec![vec![Rational::zero(); dmax]; gmax + 1];
    for g in 0..=gmax {
        for d in 1..=dmax {
            let mut acc = Rational::zero();
            for k in (1..=d).filter(|k| d % k == 0) {
                let kp = k_power(k, 2 * g as i64 - 3);
                for h in 0..=g {
                    let n = &table.n[h][d / k - 1];
                    if *n != 0 {
                        acc = acc + kp.clone() * a[h][g - h].clone() * Rational::from_integer(n.clone());
                    }
                }
            }
            out[g][d - 1] = acc;
        }
    }
    out
}

/// Invert [`gv_to_gw`] degree by degree; every `n_g(d)` must come out integral.
pub fn gw_to_gv(side: &str, n_gw: &[Vec<Rational>]) -> Result<GvTable, GvError> {
    let gmax = n_gw.len().checked_sub(1).ok_or_else(|| GvError::Incomplete("no genera".into()))?;
    let dmax = n_gw[0].len();
    if n_gw.iter().any(|r| r.len() != dmax) {
        return Err(GvError::Incomplete("genera have different degree ranges".into()));
    }
    let a = sine_coefficients(gmax);
    let mut t = GvTable::zeros(side, gmax, dmax);
    for d in 1..=dmax {
        for g in 0..=gmax {
            let mut rest = n_gw[g][d - 1].clone();
            for k in (1..=d).filter(|k| d % k == 0) {
                let kp = k_power(k, 2 * g as i64 - 3);
                for h in 0..=g {
                    if k == 1 && h == g {
                        continue;
                    }
                    let n = &t.n[h][d / k - 1];
                    if *n != 0 {
                        rest = rest - kp.clone() * a[h][g - h].clone() * Rational::from_integer(n.clone());
                    }
                }
            }
            t.n[g][d - 1] = rest.to_integer().ok_or_else(|| GvError::NonIntegral { g, d, value: rest.to_string() })?;
        }
    }
    Ok(t)
}
