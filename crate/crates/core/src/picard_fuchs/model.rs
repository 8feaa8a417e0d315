use super::{PfError, ThetaOperator};
use crate::exact::{MinPoly, Poly, Rational, RationalFunction};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Topological data of the Calabi-Yau attached to one large-volume point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideData {
    pub name: String,
    pub chi: i64,
    pub c2h: i64,
    pub h3: i64,
    pub h11: i64,
    /// `f_1` is the local coordinate to this power.
    pub f1_power: i64,
}

impl SideData {
    /// `3 + h11 - chi/12`
    pub fn w0_exponent(&self) -> Rational {
        Rational::from(3 + self.h11) - Rational::frac(self.chi, 12)
    }

    /// `1 + c2.H/12`
    pub fn coordinate_exponent(&self) -> Rational {
        Rational::one() + Rational::frac(self.c2h, 12)
    }
}

/// On-disk form of a model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub name: String,
    /// `operator[k]` lists the x-coefficients (low to high) multiplying `theta^k`.
    pub operator: Vec<Vec<i64>>,
    pub yukawa_numerator: Vec<i64>,
    pub yukawa_denominator: Vec<i64>,
    pub discriminant: Vec<i64>,
    pub apparent_point: i64,
    pub conifold_minpoly: Vec<i64>,
    pub x_side: SideData,
    pub z_side: SideData,
}

/// A one-parameter model with large-volume points at `x = 0` and `x = infinity`.
#[derive(Debug, Clone)]
pub struct CYModel {
    pub name: String,
    pub operator: ThetaOperator,
    pub yukawa: RationalFunction,
    pub discriminant: Poly<Rational>,
    pub apparent_point: Rational,
    pub minpoly: Arc<MinPoly>,
    pub x_side: SideData,
    pub z_side: SideData,
    file: ModelFile,
}

impl CYModel {
    pub fn from_file(f: ModelFile) -> Result<Self, PfError> {
        let operator = ThetaOperator::new(f.operator.iter().map(|c| Poly::from_ints(c)).collect())?;
        let yukawa = RationalFunction::new("x", Poly::from_ints(&f.yukawa_numerator), Poly::from_ints(&f.yukawa_denominator))
            .map_err(|e| PfError::Model(e.to_string()))?;
        let minpoly = MinPoly::new(f.conifold_minpoly.clone()).map_err(|e| PfError::Model(e.to_string()))?;
        let discriminant = Poly::from_ints(&f.discriminant);
        if discriminant.degree() != Some(minpoly.degree()) {
            return Err(PfError::Model("conifold minpoly degree differs from discriminant".into()));
        }
        let lead = operator.coeff(operator.order());
        let d = Poly::from_ints(&f.discriminant);
        if lead.div_rem(&d).map(|(_, r)| !r.is_zero()).unwrap_or(true) {
            return Err(PfError::Model("leading symbol is not divisible by the discriminant".into()));
        }
        Ok(CYModel {
            name: f.name.clone(),
            operator,
            yukawa,
            discriminant,
            apparent_point: Rational::from(f.apparent_point),
            minpoly,
            x_side: f.x_side.clone(),
            z_side: f.z_side.clone(),
            file: f,
        })
    }

    pub fn from_json(s: &str) -> Result<Self, PfError> {
        let f: ModelFile = serde_json::from_str(s).map_err(|e| PfError::Model(e.to_string()))?;
        CYModel::from_file(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.file).expect("model serializes")
    }

    pub fn file(&self) -> &ModelFile {
        &self.file
    }

    /// The Grassmannian / Pfaffian model.
    pub fn builtin() -> Self {
        CYModel::from_file(builtin_file()).expect("builtin model is valid")
    }

    /// `x^3 C_xxx` as a rational function.
    pub fn x3c(&self) -> RationalFunction {
        self.yukawa.try_mul(&RationalFunction::from_poly("x", Poly::from_ints(&[0, 0, 0, 1]))).unwrap()
    }

    /// `z^3 dis(1/z)` for a cubic discriminant, the discriminant in `z = 1/x`.
    pub fn discriminant_z(&self) -> Poly<Rational> {
        self.discriminant.reversed(self.discriminant.degree().unwrap())
    }

    /// `r_k = p_{4-k}/p_4`, so that `B_4 + r_1 B_3 + r_2 B_2 + r_3 B_1 + r_4 = 0`.
    pub fn b_reduction_coeffs(&self) -> Vec<RationalFunction> {
        let n = self.operator.order();
        let lead = self.operator.coeff(n).clone();
        (1..=n)
            .map(|k| RationalFunction::new("x", self.operator.coeff(n - k).clone(), lead.clone()).unwrap())
            .collect()
    }
}

pub fn builtin_file() -> ModelFile {
    // theta^k coefficients, read off from the x^i (... theta ...) form
    let rows: [[i64; 5]; 6] = [
        [0, 0, 0, 0, 9],
        [-45, -306, -816, -1020, -519],
        [-2166, -9546, -15194, -10064, -2258],
        [12, 1350, 4706, 5256, 1686],
        [-26, -174, -478, -608, -295],
        [1, 4, 6, 4, 1],
    ];
    let operator = (0..5).map(|k| rows.iter().map(|r| r[k]).collect()).collect();
    ModelFile {
        name: "gr-pf".into(),
        operator,
        yukawa_numerator: vec![42, -14],
        yukawa_denominator: vec![0, 0, 0, 1, -57, -289, 1],
        discriminant: vec![1, -57, -289, 1],
        apparent_point: 3,
        conifold_minpoly: vec![1, -57, -289, 1],
        x_side: SideData { name: "X".into(), chi: -98, c2h: 84, h3: 42, h11: 1, f1_power: 0 },
        z_side: SideData { name: "X'".into(), chi: -98, c2h: 56, h3: 14, h11: 1, f1_power: 1 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_symbol_factors() {
        let m = CYModel::builtin();
        let p4 = m.operator.coeff(4).clone();
        let expect = m.discriminant.mul(&Poly::from_ints(&[9, -6, 1]));
        assert_eq!(p4, expect);
    }

    #[test]
    fn json_round_trip() {
        let m = CYModel::builtin();
        let m2 = CYModel::from_json(&m.to_json()).unwrap();
        assert_eq!(m.operator, m2.operator);
        assert_eq!(m.yukawa, m2.yukawa);
    }

    #[test]
    fn yukawa_shape() {
        let m = CYModel::builtin();
        assert_eq!(m.yukawa.numer().degree(), Some(1));
        assert_eq!(m.x_side.chi, m.z_side.chi);
        assert_eq!(m.x_side.w0_exponent(), Rational::frac(73, 6));
    }

    #[test]
    fn corrupt_model_rejected() {
        let mut f = builtin_file();
        f.discriminant = vec![1, 1, 0, 1];
        assert!(CYModel::from_file(f).is_err());
        assert!(CYModel::from_json("{").is_err());
    }
}
