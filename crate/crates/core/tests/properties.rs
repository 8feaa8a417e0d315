use gwgv::anomaly::Side;
use gwgv::exact::{rank, solve_exact, AlgebraicNumber, Field, MinPoly, Rational};
use gwgv::gv::{gv_to_gw, gw_to_gv, GvTable};
use gwgv::harness::{render_table, Format, TableFile};
use gwgv::series::TruncatedSeries;
use proptest::prelude::*;
use rug::Integer;
use std::collections::BTreeMap;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| Rational::frac(n, d))
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rational(), n), n)
}

fn mat_vec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| row.iter().zip(x).fold(Rational::zero(), |acc, (c, v)| acc + c.clone() * v.clone())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r.clone());
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }

    #[test]
    fn exact_solve_satisfies_the_system(a in matrix(4), x in prop::collection::vec(rational(), 4)) {
        let b = mat_vec(&a, &x);
        match solve_exact(&a, &b) {
            Ok(sol) => {
                prop_assert_eq!(rank(&a), 4);
                prop_assert_eq!(sol, x);
            }
            Err(_) => prop_assert!(rank(&a) < 4),
        }
    }

    #[test]
    fn rank_of_dependent_rows(a in matrix(3), c in rational()) {
        let mut rows = a.clone();
        rows.push(a[0].iter().zip(&a[1]).map(|(u, v)| u.clone() + c.clone() * v.clone()).collect());
        prop_assert_eq!(rank(&rows), rank(&a));
    }

    #[test]
    fn gopakumar_vafa_round_trip(cells in prop::collection::vec(prop::collection::vec(-1000i64..1000, 6), 1..4)) {
        let n: Vec<Vec<Integer>> = cells.iter().map(|r| r.iter().map(|&v| Integer::from(v)).collect()).collect();
        let table = GvTable { side: "x".into(), n };
        let back = gw_to_gv("x", &gv_to_gw(&table)).unwrap();
        prop_assert_eq!(back, table);
    }

    #[test]
    fn reversion_inverts_composition(c in prop::collection::vec(rational(), 6), lead in 1i64..5) {
        let mut coeffs = vec![Rational::from(lead)];
        coeffs.extend(c);
        let f = TruncatedSeries::new("x", 1, coeffs, 7, &Rational::zero());
        let g = f.revert("y").unwrap();
        let id = f.compose(&g).unwrap();
        for k in 0..id.order() {
            prop_assert_eq!(id.coeff(k), if k == 1 { Rational::one() } else { Rational::zero() });
        }
        let back = g.compose(&f).unwrap();
        prop_assert_eq!(back.coeff(1), Rational::one());
        for k in 2..back.order() {
            prop_assert!(back.coeff(k).is_zero());
        }
    }

    #[test]
    fn exp_inverts_log(c in prop::collection::vec(rational(), 5)) {
        let f = TruncatedSeries::new("x", 1, c, 6, &Rational::zero());
        let e = f.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), f);
    }

    #[test]
    fn algebraic_inverse(c in prop::collection::vec(rational(), 3)) {
        let m = MinPoly::new(vec![1, -57, -289, 1]).unwrap();
        let a = AlgebraicNumber::new(c, &m);
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn table_layouts_cover_every_cell(rows in prop::collection::vec(prop::collection::vec(-99i64..99, 1..6), 1..5)) {
        let width = rows[0].len();
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|mut r| { r.resize(width, 0); r }).collect();
        let t = TableFile::from_rows(Side::X, &rows, BTreeMap::new());
        let csv = render_table(&t, Format::Csv).unwrap();
        prop_assert_eq!(csv.lines().count(), width + 1);
        for (g, row) in rows.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                let line = csv.lines().nth(i + 1).unwrap();
                prop_assert_eq!(line.split(',').nth(g + 1).unwrap(), v.to_string());
            }
        }
        let md = render_table(&t, Format::Markdown).unwrap();
        prop_assert_eq!(md.lines().count(), width + 2);
    }
}
