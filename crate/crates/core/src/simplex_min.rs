//! Exact minimum of a quadratic form over the closed standard simplex.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cones::stationary_cone;
use crate::linalg::{solve, RationalMatrix};
use crate::lp::{lp, LpProblem, LpStatus};
use crate::poset::Poset;
use crate::quadform::QuadraticForm;
use crate::rational::{self, Rational, RationalVector};

pub const DEFAULT_SIMPLEX_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("form of size {n} exceeds the face-enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("the simplex of a zero-dimensional form is empty")]
    Empty,
    #[error("inputs must be positive")]
    NonpositiveInput,
    #[error("r must be a rational >= 1")]
    BadRange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexMinimum {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    #[serde(with = "rational::serde_str::vec")]
    pub minimizer: RationalVector,
    #[serde(with = "crate::one_based::vec")]
    pub support: Vec<usize>,
    /// The returned minimizer is strictly positive.
    pub interior: bool,
    #[serde(with = "rational::serde_str")]
    pub p_value: Rational,
    /// Decimal rendering of `value`; not authoritative.
    pub value_approx: f64,
    /// Decimal rendering of `p_value`; not authoritative.
    pub p_value_approx: f64,
}

impl SimplexMinimum {
    fn new(value: Rational, minimizer: RationalVector) -> Self {
        let support: Vec<usize> = (0..minimizer.len()).filter(|&i| minimizer[i].is_positive()).collect();
        let p_value = value.recip();
        Self {
            interior: support.len() == minimizer.len(),
            value_approx: rational::to_f64(&value),
            p_value_approx: rational::to_f64(&p_value),
            support,
            p_value,
            value,
            minimizer,
        }
    }
}

/// Minimise `f` over `{x ≥ 0, Σx = 1}`.
///
/// Positive semidefinite forms are convex: faces are tried from the largest
/// down and the first Karush-Kuhn-Tucker point is the minimum, within a
/// budget of `2^cap` faces. Other forms need every face, so `n ≤ cap`.
pub fn minimize_on_simplex(f: &QuadraticForm, cap: usize) -> Result<SimplexMinimum, SimplexError> {
    let n = f.n();
    if n == 0 {
        return Err(SimplexError::Empty);
    }
    if f.definiteness().is_psd() {
        convex_minimum(f, cap)
    } else {
        if n > cap {
            return Err(SimplexError::CapExceeded { n, cap });
        }
        Ok(exhaustive_minimum(f))
    }
}

fn convex_minimum(f: &QuadraticForm, cap: usize) -> Result<SimplexMinimum, SimplexError> {
    let n = f.n();
    let budget: u128 = 1u128 << cap.min(100);
    let mut tried: u128 = 0;
    for size in (1..=n).rev() {
        let mut support: Vec<usize> = (0..size).collect();
        loop {
            tried += 1;
            if tried > budget {
                return Err(SimplexError::CapExceeded { n, cap });
            }
            if let Some((x, mu)) = face_candidate(f, &support, true) {
                return Ok(SimplexMinimum::new(mu / rational::int(2), x));
            }
            if !next_combination(&mut support, n) {
                break;
            }
        }
    }
    unreachable!("a convex form attains a KKT point on the simplex")
}

fn exhaustive_minimum(f: &QuadraticForm) -> SimplexMinimum {
    let n = f.n();
    let best = (1u64..1 << n)
        .into_par_iter()
        .filter_map(|mask| {
            let support: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            face_candidate(f, &support, false).map(|(x, mu)| (mu, mask, x))
        })
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("vertices are always candidates");
    SimplexMinimum::new(best.0 / rational::int(2), best.2)
}

/// Advance `c` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Stationary point of `f` on the face with the given support: `x_T ≥ 0`,
/// `Σx_T = 1`, `2(Ax)_i = μ` on `T`. With `kkt`, also `2(Ax)_j ≥ μ` off `T`.
/// Returns the full vector and the least feasible `μ`.
fn face_candidate(f: &QuadraticForm, support: &[usize], kkt: bool) -> Option<(RationalVector, Rational)> {
    let n = f.n();
    let a = f.matrix();
    let k = support.len();
    let two = rational::int(2);
    // Unknowns: x_T (k of them), then μ.
    let stationarity_row = |i: usize| -> RationalVector {
        let mut row: RationalVector = support.iter().map(|&j| &a[(i, j)] * &two).collect();
        row.push(-Rational::one());
        row
    };
    let mut rows: Vec<RationalVector> = support.iter().map(|&i| stationarity_row(i)).collect();
    let mut sum_row = vec![Rational::one(); k];
    sum_row.push(Rational::zero());
    rows.push(sum_row.clone());
    let mut rhs = rational::zeros(k);
    rhs.push(Rational::one());

    let m = RationalMatrix::from_rows(rows.clone()).expect("rectangular");
    let sol = solve(&m, &rhs).expect("dimensions agree");
    let particular = sol.particular.as_ref()?;
    let embed = |y: &[Rational]| -> (RationalVector, Rational) {
        let mut x = rational::zeros(n);
        for (t, &i) in support.iter().enumerate() {
            x[i] = y[t].clone();
        }
        (x, y[k].clone())
    };
    let off_support_ok = |x: &[Rational], mu: &Rational| -> bool {
        !kkt || {
            let g = f.gradient(x).expect("dimension");
            (0..n).filter(|i| !support.contains(i)).all(|j| g[j] >= *mu)
        }
    };
    if sol.nullspace.is_empty() {
        if particular[..k].iter().any(Signed::is_negative) {
            return None;
        }
        let (x, mu) = embed(particular);
        return off_support_ok(&x, &mu).then_some((x, mu));
    }
    let mut objective = rational::zeros(k);
    objective.push(Rational::one());
    let mut problem = LpProblem::new(k + 1).minimize(objective);
    for (row, b) in rows.into_iter().zip(rhs) {
        problem = problem.eq(row, b);
    }
    for t in 0..k {
        problem = problem.lower_bound(t, Rational::zero());
    }
    if kkt {
        for j in (0..n).filter(|j| !support.contains(j)) {
            // 2(Ax)_j − μ ≥ 0
            problem = problem.ge(stationarity_row(j), Rational::zero());
        }
    }
    let r = lp(&problem);
    match r.status {
        LpStatus::Optimal => Some(embed(&r.point.expect("optimal point"))),
        _ => None,
    }
}

/// `P(S) = ‖S,≤‖⁻¹`.
pub fn p_value(p: &Poset, cap: usize) -> Result<Rational, SimplexError> {
    Ok(minimize_on_simplex(&QuadraticForm::of_poset(p), cap)?.p_value)
}

/// `P(S)` as the sum over connected components.
pub fn p_value_by_components(p: &Poset, cap: usize) -> Result<Rational, SimplexError> {
    p.components().iter().map(|c| p_value(&p.induced(c), cap)).sum()
}

/// A strictly positive minimizer on the simplex with positive value, for a
/// positive definite form with nonempty `St(f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaithfulWitness {
    #[serde(with = "rational::serde_str::vec")]
    pub vector: RationalVector,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub strictness_certified: bool,
}

pub fn faithful_witness(f: &QuadraticForm) -> Option<FaithfulWitness> {
    if f.n() == 0 || !f.definiteness().is_pd() {
        return None;
    }
    let st = stationary_cone(f)?;
    let total = rational::sum(&st.vector);
    let u: RationalVector = st.vector.iter().map(|x| x / &total).collect();
    let value = f.evaluate(&u).expect("dimension");
    let strictness_certified = boundary_sample(f.n()).iter().all(|v| {
        let diff = rational::sub(v, &u);
        let gap = f.evaluate(v).expect("dimension") - &value;
        gap == f.evaluate(&diff).expect("dimension") && gap.is_positive()
    });
    Some(FaithfulWitness { vector: u, value, strictness_certified })
}

/// Vertices of the simplex and, from three dimensions on, edge midpoints:
/// points of the relative boundary.
fn boundary_sample(n: usize) -> Vec<RationalVector> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for i in 0..n {
        let mut e = rational::zeros(n);
        e[i] = Rational::one();
        out.push(e);
        for j in (i + 1..n).filter(|_| n > 2) {
            let mut m = rational::zeros(n);
            m[i] = rational::half();
            m[j] = rational::half();
            out.push(m);
        }
    }
    out
}

/// `min_{λ∈[0,1]} aλ² + b(1−λ)² = ab/(a+b)`.
pub fn direct_sum_p(a: &Rational, b: &Rational) -> Result<Rational, SimplexError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(SimplexError::NonpositiveInput);
    }
    Ok(a * b / (a + b))
}

/// `min_{λ∈[0,1]} aλᵏ + b(1−λ)ᵏ = ab / (a^{1/(k−1)} + b^{1/(k−1)})^{k−1}` for
/// real `k > 1`, in floating point.
pub fn direct_sum_value_f64(a: f64, b: f64, k: f64) -> Result<f64, SimplexError> {
    if a <= 0.0 || b <= 0.0 || k <= 1.0 {
        return Err(SimplexError::NonpositiveInput);
    }
    let e = 1.0 / (k - 1.0);
    Ok(a * b / (a.powf(e) + b.powf(e)).powf(k - 1.0))
}

/// `ρ(r) = 2r/(r+1)`.
pub fn rho(r: &Rational) -> Result<Rational, SimplexError> {
    if *r < Rational::one() {
        return Err(SimplexError::BadRange);
    }
    Ok(r * rational::int(2) / (r + Rational::one()))
}

/// `P(l/t) = 2lt/(l+t)`.
pub fn p_of_r(r: &Rational) -> Result<Rational, SimplexError> {
    if *r < Rational::one() {
        return Err(SimplexError::BadRange);
    }
    let (l, t) = (Rational::from_integer(r.numer().clone()), Rational::from_integer(r.denom().clone()));
    Ok(rational::int(2) * &l * &t / (l + t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::*;
    use crate::quadform::form_of_poset;
    use crate::rational::{frac, int};

    fn min_of(p: &Poset) -> SimplexMinimum {
        minimize_on_simplex(&form_of_poset(p), DEFAULT_SIMPLEX_CAP).unwrap()
    }

    #[test]
    fn chain_two() {
        let m = min_of(&chain(2));
        assert_eq!(m.value, frac(3, 4));
        assert_eq!(m.minimizer, vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(m.p_value, frac(4, 3));
    }

    #[test]
    fn kleiner_k_norm() {
        let m = min_of(&kleiner_k());
        assert_eq!(m.value, frac(5, 12));
        assert_eq!(m.p_value, frac(12, 5));
        assert!(m.interior);
    }

    #[test]
    fn antichain_centre() {
        let m = min_of(&antichain(4));
        assert_eq!(m.value, frac(1, 4));
        assert_eq!(m.minimizer, vec![frac(1, 4); 4]);
        assert_eq!(m.p_value, int(4));
    }

    #[test]
    fn indefinite_uses_every_face() {
        let p = example4();
        let f = form_of_poset(&p);
        let m = minimize_on_simplex(&f, DEFAULT_SIMPLEX_CAP).unwrap();
        assert_eq!(f.evaluate(&m.minimizer).unwrap(), m.value);
        assert!(minimize_on_simplex(&f, 5).is_err());
    }

    #[test]
    fn primitive_values() {
        assert_eq!(p_value(&primitive(&[2, 2, 2]), 16).unwrap(), int(4));
        assert_eq!(p_value(&primitive(&[1, 1, 1, 2]), 16).unwrap(), frac(13, 3));
        assert_eq!(p_value_by_components(&primitive(&[1, 2, 5]), 16).unwrap(), int(4));
    }

    #[test]
    fn faithful() {
        let w = faithful_witness(&form_of_poset(&kleiner_k())).unwrap();
        assert_eq!(w.vector, vec![frac(1, 6), frac(1, 3), frac(1, 3), frac(1, 6)]);
        assert_eq!(w.value, frac(5, 12));
        assert!(w.strictness_certified);
        assert!(faithful_witness(&form_of_poset(&example4())).is_none());
        assert!(faithful_witness(&form_of_poset(&crown(2).unwrap())).is_none());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(direct_sum_p(&int(1), &int(1)).unwrap(), frac(1, 2));
        assert_eq!(direct_sum_p(&frac(3, 4), &int(1)).unwrap(), frac(3, 7));
        assert_eq!(direct_sum_p(&frac(5, 12), &frac(3, 5)).unwrap(), frac(15, 61));
        assert!(direct_sum_p(&int(0), &int(1)).is_err());
        assert!((direct_sum_value_f64(0.75, 1.0, 2.0).unwrap() - 3.0 / 7.0).abs() < 1e-12);
        assert_eq!(rho(&int(1)).unwrap(), int(1));
        assert_eq!(rho(&int(2)).unwrap(), frac(4, 3));
        assert_eq!(rho(&int(4)).unwrap(), frac(8, 5));
        assert_eq!(p_of_r(&frac(3, 2)).unwrap(), frac(12, 5));
        assert_eq!(p_of_r(&frac(7, 2)).unwrap(), frac(28, 9));
        assert_eq!(p_of_r(&frac(7, 2)).unwrap() + rho(&int(17)).unwrap(), int(5));
        assert!(rho(&frac(1, 2)).is_err());
    }
}
