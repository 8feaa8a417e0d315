use super::conditions::{
    affine_gv, apparent_rows, constant_row, gap_rows, leading_rows, solve_rows, vanishing_row, RowCheck, RowTag, Schedule, Side,
};
use super::{
    ambiguity_ansatz, assemble_ambiguity, build_propagators, derive_r_of_x, genus_data, genus_one_data, integrate_pg, topological_fg,
    with_ambiguity, AnomalyError, PropagatorFrame, V2Sign, YYPoly, YYRing,
};
use crate::exact::{AlgebraicNumber, FactoredFraction, Field, Rational, RationalFunction};
use crate::gv::{gap_constant, gw_to_gv};
use crate::mirror::{build_conifold_frame, build_frame, genus_one_invariants, genus_zero_invariants, TopologicalFrame};
use crate::picard_fuchs::{CYModel, PointKind};
use rug::Integer;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub max_genus: usize,
    /// terms kept in the `x`, `z` and `q` expansions
    pub q_order: i64,
    /// terms kept in the conifold and `x = 3` expansions; `2 max_genus + 6` when unset
    pub s_order: Option<i64>,
    pub degree_x: usize,
    pub degree_z: usize,
    pub schedule: Schedule,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_genus: 5, q_order: 26, s_order: None, degree_x: 18, degree_z: 13, schedule: Schedule::default() }
    }
}

impl SolverConfig {
    pub fn s_order(&self) -> i64 {
        self.s_order.unwrap_or(2 * self.max_genus as i64 + 6)
    }

    pub fn degree(&self, side: Side) -> usize {
        match side {
            Side::X => self.degree_x,
            Side::Z => self.degree_z,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GenusResult {
    pub genus: usize,
    /// `P^(g)` normalized to vanish at the vanishing point
    pub p: YYPoly,
    pub names: Vec<String>,
    pub values: Vec<Rational>,
    pub f: FactoredFraction,
    pub used: Vec<RowTag>,
    pub checks: Vec<RowCheck>,
    /// `[V^-k]` for `k = 2g-2, ..., 1`
    pub conifold_polar: Vec<AlgebraicNumber>,
    /// `[U^-k]` at `x = 3` for `k = 2g-2, ..., 1`
    pub apparent_polar: Vec<Rational>,
    pub constant_terms: BTreeMap<Side, Rational>,
    pub gw: BTreeMap<Side, Vec<Rational>>,
}

/// Everything the genus loop shares: ring, propagators and the four frames.
pub struct Pipeline {
    pub model: CYModel,
    pub config: SolverConfig,
    pub r: RationalFunction,
    pub ring: YYRing,
    pub props: PropagatorFrame,
    pub x: TopologicalFrame<Rational>,
    pub z: TopologicalFrame<Rational>,
    pub conifold: TopologicalFrame<AlgebraicNumber>,
    pub apparent: TopologicalFrame<Rational>,
}

#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub gw: BTreeMap<Side, Vec<Vec<Rational>>>,
    pub gv: BTreeMap<Side, Vec<Vec<Integer>>>,
    pub genera: Vec<GenusResult>,
    pub k_u2: Option<AlgebraicNumber>,
}

fn check_degree(side: Side, have: i64, need: usize) -> Result<(), AnomalyError> {
    if have <= need as i64 {
        return Err(AnomalyError::Model(format!("{side} expansion reaches degree {} but degree {need} is needed; raise the q-order", have - 1)));
    }
    Ok(())
}

impl Pipeline {
    pub fn new(model: &CYModel, config: SolverConfig) -> Result<Self, AnomalyError> {
        let r = derive_r_of_x(model, config.q_order.max(20))?;
        let ring = YYRing::new(model, &r)?;
        let props = build_propagators(&ring)?;
        let x = build_frame(model, PointKind::LargeX, config.q_order)?;
        let z = build_frame(model, PointKind::LargeZ, config.q_order)?;
        let conifold = build_conifold_frame(model, config.s_order())?;
        let apparent = build_frame(model, PointKind::Apparent, config.s_order())?;
        Ok(Pipeline { model: model.clone(), config, r, ring, props, x, z, conifold, apparent })
    }

    fn frame(&self, side: Side) -> &TopologicalFrame<Rational> {
        match side {
            Side::X => &self.x,
            Side::Z => &self.z,
        }
    }

    fn chi(&self, side: Side) -> i64 {
        match side {
            Side::X => self.model.x_side.chi,
            Side::Z => self.model.z_side.chi,
        }
    }

    /// Genus 0 and 1 from the mirror map, as GW values `[g][d-1]`.
    pub fn low_genus(&self, side: Side) -> Result<Vec<Vec<Rational>>, AnomalyError> {
        let d = self.config.degree(side);
        let f = self.frame(side);
        Ok(vec![genus_zero_invariants(&self.model, f, d as i64)?, genus_one_invariants(&self.model, f, d as i64)?])
    }

    /// Fix `f_g` given `P^(g)`, the GV invariants of lower genus and, for `g > 2`, `k_U^2`.
    pub fn solve_genus(
        &self,
        g: usize,
        p: &YYPoly,
        lower: &BTreeMap<Side, Vec<Vec<Integer>>>,
        k_u2: Option<&AlgebraicNumber>,
    ) -> Result<(GenusResult, BTreeMap<Side, Vec<Integer>>), AnomalyError> {
        let ansatz = ambiguity_ansatz(&self.ring, g);
        let n = ansatz.len();
        let sched = self.config.schedule.get(g);
        let t = std::time::Instant::now();
        let s_order = self.config.s_order();
        let (large, (con, app)) = rayon::join(
            || {
                [Side::X, Side::Z]
                    .map(|s| topological_fg(&self.ring, self.frame(s), g, p, &ansatz, self.config.q_order).map(|f| (s, f)))
            },
            || {
                rayon::join(
                    || topological_fg(&self.ring, &self.conifold, g, p, &ansatz, s_order),
                    || topological_fg(&self.ring, &self.apparent, g, p, &ansatz, s_order),
                )
            },
        );
        let (con, app) = (con?, app?);
        let mut fs = BTreeMap::new();
        for r in large {
            let (s, f) = r?;
            check_degree(s, f.order(), self.config.degree(s))?;
            fs.insert(s, f);
        }
        log::info!("genus {g}: topological limits in {:.2?}", t.elapsed());

        let mut scheduled = gap_rows(&con, g)?;
        let mut leading = Vec::new();
        if g > 2 {
            let k = k_u2.ok_or_else(|| AnomalyError::Condition { genus: g, detail: "k_U^2 is not known".into() })?;
            leading = leading_rows(&con, g, k)?;
        }
        scheduled.extend(leading);
        let mut nv = BTreeMap::new();
        for (&s, f) in &fs {
            scheduled.push(constant_row(f, g, s, self.chi(s))?);
            nv.insert(s, affine_gv(f, g, &lower[&s], self.config.degree(s))?);
        }
        let app_rows = apparent_rows(&app, g)?;
        let mut extra = Vec::new();
        for (s, list) in [(Side::X, &sched.vanishing_x), (Side::Z, &sched.vanishing_z)] {
            for &d in list {
                if d == 0 || d > self.config.degree(s) {
                    return Err(AnomalyError::Condition { genus: g, detail: format!("scheduled degree {d} on side {s} is out of range") });
                }
                scheduled.push(vanishing_row(&nv[&s], s, d));
            }
        }
        let dmax = self.config.degree_x.max(self.config.degree_z);
        for d in 1..=dmax {
            for (s, list) in [(Side::X, &sched.vanishing_x), (Side::Z, &sched.vanishing_z)] {
                let below = lower[&s].get(g - 1).and_then(|r| r.get(d - 1));
                if !list.contains(&d) && below.is_some_and(|v| *v == 0) {
                    extra.push(vanishing_row(&nv[&s], s, d));
                }
            }
        }
        if sched.apparent {
            scheduled.extend(app_rows);
        } else {
            extra.extend(app_rows);
        }
        let solved = solve_rows(g, n, scheduled, extra, sched.greedy)?;
        log::info!("genus {g}: {} rows used for {n} unknowns", solved.used.len());

        let values = solved.values;
        let con_s = con.evaluate(&values);
        let app_s = app.evaluate(&values);
        let top = 2 * g as i64 - 2;
        let conifold_polar = (1..=top).rev().map(|k| con_s.try_coeff(-k)).collect::<Result<Vec<_>, _>>()?;
        let apparent_polar = (1..=top).rev().map(|k| app_s.try_coeff(-k)).collect::<Result<Vec<_>, _>>()?;
        let mut gw = BTreeMap::new();
        let mut gv = BTreeMap::new();
        let mut constant_terms = BTreeMap::new();
        for (&s, f) in &fs {
            let series = f.evaluate(&values);
            constant_terms.insert(s, series.try_coeff(0)?);
            gw.insert(s, (1..=self.config.degree(s)).map(|d| series.try_coeff(d as i64)).collect::<Result<Vec<_>, _>>()?);
            let ints = nv[&s]
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let v = a.eval(&values);
                    v.to_integer().ok_or_else(|| crate::gv::GvError::NonIntegral { g, d: i + 1, value: v.to_string() }.into())
                })
                .collect::<Result<Vec<_>, AnomalyError>>()?;
            gv.insert(s, ints);
        }
        let result = GenusResult {
            genus: g,
            p: p.clone(),
            names: ansatz.iter().map(|a| a.name.clone()).collect(),
            f: assemble_ambiguity(&ansatz, &values),
            values,
            used: solved.used,
            checks: solved.checks,
            conifold_polar,
            apparent_polar,
            constant_terms,
            gw,
        };
        Ok((result, gv))
    }

    /// The full loop: integrate `P^(g)`, fix `f_g`, and feed the complete
    /// `F^(g)` into the next genus. `cached` may supply integrated `P^(g)`.
    pub fn run(&self, cached: &BTreeMap<usize, YYPoly>) -> Result<SolveOutput, AnomalyError> {
        let mut gw = BTreeMap::new();
        let mut gv = BTreeMap::new();
        for s in [Side::X, Side::Z] {
            let low = self.low_genus(s)?;
            let table = gw_to_gv(&s.to_string(), &low)?;
            gw.insert(s, low);
            gv.insert(s, table.n);
        }
        let mut data = vec![genus_one_data(&self.ring, &self.model)?];
        let mut genera = Vec::new();
        let mut k_u2: Option<AlgebraicNumber> = None;
        for g in 2..=self.config.max_genus {
            let t = std::time::Instant::now();
            let p = match cached.get(&g) {
                Some(p) => p.clone(),
                None => integrate_pg(&self.ring, &self.props, g, &data, V2Sign::Derived).map_err(AnomalyError::at(g, "integrate P"))?,
            };
            log::info!("genus {g}: P has {} terms ({:.2?})", p.len(), t.elapsed());
            let (res, n) = self.solve_genus(g, &p, &gv, k_u2.as_ref()).map_err(AnomalyError::at(g, "fix the ambiguity"))?;
            if g == 2 {
                k_u2 = Some(res.conifold_polar[0].mul_rational(&gap_constant(2).recip()?));
            }
            for (s, row) in n {
                gv.get_mut(&s).unwrap().push(row);
                gw.get_mut(&s).unwrap().push(res.gw[&s].clone());
            }
            data.push(genus_data(&self.ring, g, with_ambiguity(&self.ring, g, &p, &res.f)));
            genera.push(GenusResult { p, ..res });
        }
        Ok(SolveOutput { gw, gv, genera, k_u2 })
    }
}
