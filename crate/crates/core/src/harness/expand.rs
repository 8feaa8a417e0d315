use super::HarnessError;
use crate::exact::Field;
use crate::mirror::{build_conifold_frame, build_frame, TopologicalFrame};
use crate::picard_fuchs::{CYModel, PointKind};
use crate::series::SeriesSerial;
use serde::Serialize;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpandPoint {
    X0,
    Z0,
    Conifold,
    X3,
}

impl ExpandPoint {
    /// Smallest order the local basis can be built to.
    pub fn min_order(self) -> i64 {
        match self {
            ExpandPoint::X0 => 3,
            ExpandPoint::Z0 => 4,
            ExpandPoint::Conifold => 5,
            ExpandPoint::X3 => 7,
        }
    }
}

impl FromStr for ExpandPoint {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "x0" => Ok(ExpandPoint::X0),
            "z0" => Ok(ExpandPoint::Z0),
            "conifold" => Ok(ExpandPoint::Conifold),
            "x3" => Ok(ExpandPoint::X3),
            _ => Err(HarnessError::Config(format!("unknown point {s}; expected x0, z0, conifold or x3"))),
        }
    }
}

/// Local data at one point, coefficients as decimal strings.
#[derive(Debug, Clone, Serialize)]
pub struct Expansion {
    pub point: ExpandPoint,
    pub flat_variable: String,
    pub w0: SeriesSerial<String>,
    pub theta_t: SeriesSerial<String>,
    pub y_of_s: SeriesSerial<String>,
    pub s_of_y: SeriesSerial<String>,
}

fn dump<C: Field>(point: ExpandPoint, f: &TopologicalFrame<C>) -> Expansion {
    let s = |t: &crate::series::TruncatedSeries<C>| t.to_serial(|c| c.to_string());
    Expansion {
        point,
        flat_variable: f.yvar.clone(),
        w0: s(&f.w0),
        theta_t: s(&f.theta_t),
        y_of_s: s(&f.y_of_s),
        s_of_y: s(&f.s_of_y),
    }
}

/// Fundamental period, `theta T` and the mirror map at `point` to `order` terms.
pub fn expand(model: &CYModel, point: ExpandPoint, order: i64) -> Result<Expansion, HarnessError> {
    let err = |source| HarnessError::Mirror { module: "mirror-maps", operation: "expand", source };
    let min = point.min_order();
    if order < min {
        return Err(HarnessError::Config(format!("order {order} is too low at {point:?}; need at least {min}")));
    }
    let kind = match point {
        ExpandPoint::X0 => PointKind::LargeX,
        ExpandPoint::Z0 => PointKind::LargeZ,
        ExpandPoint::X3 => PointKind::Apparent,
        ExpandPoint::Conifold => return Ok(dump(point, &build_conifold_frame(model, order).map_err(err)?)),
    };
    Ok(dump(point, &build_frame(model, kind, order).map_err(err)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_map_at_x0() {
        let e = expand(&CYModel::builtin(), ExpandPoint::X0, 4).unwrap();
        assert_eq!(e.flat_variable, "q");
        assert_eq!(e.w0.coefficients[0], "1");
        for p in ["x0", "z0", "conifold", "x3"] {
            let p: ExpandPoint = p.parse().unwrap();
            expand(&CYModel::builtin(), p, p.min_order()).unwrap();
            assert!(matches!(expand(&CYModel::builtin(), p, p.min_order() - 1), Err(HarnessError::Config(_))));
        }
    }
}
