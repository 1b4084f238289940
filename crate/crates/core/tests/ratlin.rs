use num_traits::Zero;
use posetform::linalg::{determinant, solve};
use posetform::lp::{feasible_point, lp, LpProblem, LpStatus};
use posetform::rational::{frac, int};
use posetform::{Rational, RationalMatrix, RationalVector};
use proptest::prelude::*;

mod common;
use common::vertices;

fn arb_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec(proptest::collection::vec((-9i64..=9, 1i64..=4), n), n).prop_map(|rows| {
        RationalMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|(p, q)| frac(p, q)).collect()).collect())
            .unwrap()
    })
}

fn arb_system() -> impl Strategy<Value = (usize, Vec<(RationalVector, Rational)>, RationalVector)> {
    (1usize..=4, 1usize..=6).prop_flat_map(|(n, m)| {
        (
            Just(n),
            proptest::collection::vec((proptest::collection::vec(-4i64..=4, n), -6i64..=6), m)
                .prop_map(|rows| rows.into_iter().map(|(a, b)| (a.into_iter().map(int).collect(), int(b))).collect()),
            proptest::collection::vec(-3i64..=3, n).prop_map(|c| c.into_iter().map(int).collect()),
        )
    })
}

fn objective(c: &[Rational], x: &[Rational]) -> Rational {
    c.iter().zip(x).map(|(a, b)| a * b).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_round_trips(m in (1usize..=5).prop_flat_map(arb_matrix)) {
        let det = determinant(&m).unwrap();
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(!det.is_zero());
                prop_assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(m.rows()));
                prop_assert_eq!(inv.mul(&m).unwrap(), RationalMatrix::identity(m.rows()));
            }
            Err(_) => prop_assert!(det.is_zero()),
        }
    }

    #[test]
    fn solve_returns_solutions(m in (1usize..=5).prop_flat_map(arb_matrix), b in proptest::collection::vec(-9i64..=9, 5)) {
        let b: RationalVector = b[..m.rows()].iter().map(|&v| int(v)).collect();
        let sol = solve(&m, &b).unwrap();
        if let Some(x) = &sol.particular {
            prop_assert_eq!(&m.mul_vec(x).unwrap(), &b);
        }
        for z in &sol.nullspace {
            prop_assert!(m.mul_vec(z).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(sol.nullspace.len(), m.cols() - m.rank());
    }

    #[test]
    fn lp_agrees_with_vertex_enumeration((n, rows, c) in arb_system()) {
        let mut problem = LpProblem::new(n).nonnegative().minimize(c.clone());
        for (a, b) in &rows {
            problem = problem.le(a.clone(), b.clone());
        }
        let result = lp(&problem);
        let verts = vertices(&rows, n);
        prop_assert_eq!(result.status == LpStatus::Infeasible, verts.is_empty());
        prop_assert_eq!(feasible_point(&problem).is_some(), !verts.is_empty());
        if let Some(x) = &result.point {
            prop_assert!(problem.is_feasible_point(x));
        }
        if result.status == LpStatus::Optimal {
            let best = verts.iter().map(|v| objective(&c, v)).min().unwrap();
            prop_assert_eq!(result.value.clone(), Some(best));
        }
        if result.status == LpStatus::Unbounded {
            let best = verts.iter().map(|v| objective(&c, v)).min().unwrap();
            let mut lower = LpProblem::new(n).nonnegative().minimize(c.clone()).le(c.clone(), best - int(1));
            for (a, b) in &rows {
                lower = lower.le(a.clone(), b.clone());
            }
            prop_assert!(feasible_point(&lower).is_some());
        }
    }

    #[test]
    fn equality_rows_and_free_variables(a in proptest::collection::vec(-5i64..=5, 3), b in -5i64..=5) {
        prop_assume!(a.iter().any(|&v| v != 0));
        let row: RationalVector = a.iter().map(|&v| int(v)).collect();
        let problem = LpProblem::new(3).eq(row.clone(), int(b));
        let x = feasible_point(&problem).unwrap();
        prop_assert_eq!(objective(&row, &x), int(b));
        let bounded = problem.clone().lower_bound(0, int(-2)).minimize(vec![int(1), int(0), int(0)]);
        let r = lp(&bounded);
        if let Some(x) = &r.point {
            prop_assert!(bounded.is_feasible_point(x));
        }
    }
}
