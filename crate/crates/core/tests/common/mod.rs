use itertools::Itertools;
use posetform::linalg::solve;
use posetform::rational::int;
use posetform::{Rational, RationalMatrix, RationalVector};

/// Every vertex of `{x ≥ 0, Ax ≤ b}` via all square subsystems.
pub fn vertices(rows: &[(RationalVector, Rational)], n: usize) -> Vec<RationalVector> {
    let mut all = rows.to_vec();
    for i in 0..n {
        let mut e = vec![int(0); n];
        e[i] = int(-1);
        all.push((e, int(0)));
    }
    let mut out = Vec::new();
    for active in (0..all.len()).combinations(n) {
        let m = RationalMatrix::from_rows(active.iter().map(|&k| all[k].0.clone()).collect()).unwrap();
        let b: Vec<Rational> = active.iter().map(|&k| all[k].1.clone()).collect();
        let Ok(sol) = solve(&m, &b) else { continue };
        if !sol.is_unique() {
            continue;
        }
        let x = sol.particular.unwrap();
        let dot = |a: &[Rational]| a.iter().zip(&x).map(|(u, v)| u * v).sum::<Rational>();
        if all.iter().all(|(a, rhs)| &dot(a) <= rhs) {
            out.push(x);
        }
    }
    out
}
