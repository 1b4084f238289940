//! Quadratic forms `f(x) = x·A·xᵀ` with symmetric rational `A`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinAlgError, RationalMatrix};
use crate::poset::{HasseQuiver, Poset};
use crate::rational::{self, Rational, RationalVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadFormError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("Hasse quiver has parallel paths; no integral equivalence is claimed")]
    ParallelPaths,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticForm {
    a: RationalMatrix,
}

impl QuadraticForm {
    pub fn new(a: RationalMatrix) -> Result<Self, LinAlgError> {
        if !a.is_square() {
            return Err(LinAlgError::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        if !a.is_symmetric() {
            return Err(LinAlgError::NotSymmetric);
        }
        Ok(Self { a })
    }

    /// `f_S = Σ_{s_i ≤ s_j} x_i x_j`.
    pub fn of_poset(p: &Poset) -> Self {
        let n = p.len();
        let mut a = RationalMatrix::identity(n);
        for (i, j) in p.relations() {
            a[(i, j)] = rational::half();
            a[(j, i)] = rational::half();
        }
        Self { a }
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.a
    }

    /// The integer matrix `2A`.
    pub fn doubled(&self) -> RationalMatrix {
        self.a.scaled(&rational::int(2))
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational, LinAlgError> {
        Ok(rational::dot(&self.a.vec_mul(x)?, x))
    }

    /// `x' = 2xA`.
    pub fn gradient(&self, x: &[Rational]) -> Result<RationalVector, LinAlgError> {
        Ok(self.a.vec_mul(x)?.into_iter().map(|v| v * rational::int(2)).collect())
    }

    /// `Σ u'_i v_i`, the polar form counted twice.
    pub fn polar(&self, u: &[Rational], v: &[Rational]) -> Result<Rational, LinAlgError> {
        Ok(rational::dot(&self.gradient(u)?, v))
    }

    pub fn det(&self) -> Rational {
        self.a.determinant().expect("form matrix is square")
    }

    pub fn det_doubled(&self) -> Rational {
        self.doubled().determinant().expect("form matrix is square")
    }

    pub fn restrict(&self, idx: &[usize]) -> Self {
        Self { a: self.a.principal(idx) }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { a: self.a.block_diag(&other.a) }
    }

    /// `a_ii` positive integers and `a_ij + a_ji` nonnegative integers.
    pub fn is_two_concave(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            let d = &self.a[(i, i)];
            d.is_integer()
                && d.is_positive()
                && (0..n).filter(|&j| j != i).all(|j| {
                    let s = &self.a[(i, j)] * rational::int(2);
                    s.is_integer() && !s.is_negative()
                })
        })
    }

    /// `q`-concavity of a quadratic form: mixed second partials `2a_ij ≥ 0`
    /// and pure second partials `2a_ii ≥ q` (the value and gradient vanish at
    /// the origin automatically).
    pub fn is_concave(&self, q: &Rational) -> bool {
        let n = self.n();
        let two = rational::int(2);
        (0..n).all(|i| &self.a[(i, i)] * &two >= *q && (0..n).all(|j| j == i || !self.a[(i, j)].is_negative()))
    }

    pub fn definiteness(&self) -> Definiteness {
        definiteness(self)
    }
}

pub fn form_of_poset(p: &Poset) -> QuadraticForm {
    QuadraticForm::of_poset(p)
}

pub fn direct_sum(f1: &QuadraticForm, f2: &QuadraticForm) -> QuadraticForm {
    f1.direct_sum(f2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DefinitenessKind {
    PositiveDefinite,
    PositiveSemidefiniteDegenerate,
    Indefinite,
}

/// Classification with a certificate: a null vector for the degenerate
/// case, a vector of negative value for the indefinite case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Definiteness {
    pub kind: DefinitenessKind,
    #[serde(with = "rational::serde_str::vec")]
    pub certificate: RationalVector,
}

impl Definiteness {
    pub fn is_psd(&self) -> bool {
        self.kind != DefinitenessKind::Indefinite
    }

    pub fn is_pd(&self) -> bool {
        self.kind == DefinitenessKind::PositiveDefinite
    }

    /// Re-check the certificate against the form.
    pub fn verify(&self, f: &QuadraticForm) -> bool {
        let c = &self.certificate;
        match self.kind {
            DefinitenessKind::PositiveDefinite => c.is_empty(),
            DefinitenessKind::PositiveSemidefiniteDegenerate => {
                !rational::is_zero_vec(c) && f.gradient(c).is_ok_and(|g| rational::is_zero_vec(&g))
            }
            DefinitenessKind::Indefinite => f.evaluate(c).is_ok_and(|v| v.is_negative()),
        }
    }
}

/// Symmetric elimination `M = T·A·Tᵀ` with rows of `T` tracked, so every
/// diagonal entry of `M` is the value of `f` at the matching row of `T`.
pub fn definiteness(f: &QuadraticForm) -> Definiteness {
    let n = f.n();
    let mut m = f.a.clone();
    let mut t = RationalMatrix::identity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    let row = |t: &RationalMatrix, i: usize| t.row(i).to_vec();
    loop {
        if remaining.is_empty() {
            return Definiteness { kind: DefinitenessKind::PositiveDefinite, certificate: Vec::new() };
        }
        if let Some(&j) = remaining.iter().find(|&&j| m[(j, j)].is_negative()) {
            return Definiteness {
                kind: DefinitenessKind::Indefinite,
                certificate: rational::primitive_integer(&row(&t, j)),
            };
        }
        let Some(pos) = remaining.iter().position(|&k| m[(k, k)].is_positive()) else {
            // Zero diagonal on the remaining block.
            for &j in &remaining {
                if let Some(&k) = remaining.iter().find(|&&k| !m[(j, k)].is_zero()) {
                    let s = if m[(j, k)].is_positive() { -Rational::one() } else { Rational::one() };
                    let v = rational::add(&row(&t, j), &rational::scale(&row(&t, k), &s));
                    return Definiteness {
                        kind: DefinitenessKind::Indefinite,
                        certificate: rational::primitive_integer(&v),
                    };
                }
            }
            let v = rational::primitive_signed(&row(&t, remaining[0]));
            return Definiteness { kind: DefinitenessKind::PositiveSemidefiniteDegenerate, certificate: v };
        };
        let k = remaining.remove(pos);
        let pivot = m[(k, k)].clone();
        for &j in &remaining {
            let c = &m[(j, k)] / &pivot;
            if c.is_zero() {
                continue;
            }
            for col in 0..n {
                let v = &m[(k, col)] * &c;
                m[(j, col)] -= v;
                let v = &t[(k, col)] * &c;
                t[(j, col)] -= v;
            }
            for r in 0..n {
                let v = &m[(r, k)] * &c;
                m[(r, j)] -= v;
            }
        }
    }
}

/// `Q̃`, `Q̂ = E − Q̃`, `Q̂⁻¹` and the Tits matrix `𝒜 = ½(Q̂ + Q̂ᵀ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverMatrices {
    pub q_tilde: RationalMatrix,
    pub q_hat: RationalMatrix,
    pub q_hat_inv: RationalMatrix,
    pub tits: RationalMatrix,
}

pub fn quiver_matrices(p: &Poset) -> QuiverMatrices {
    let q = p.quiver();
    let n = q.n;
    let q_tilde = adjacency(&q);
    let id = RationalMatrix::identity(n);
    let q_hat = id.sub(&q_tilde);
    // E + Q̃ + … + Q̃^{n-1}
    let mut q_hat_inv = id.clone();
    let mut power = id;
    for _ in 1..n {
        power = power.mul(&q_tilde).expect("square");
        if power.max_abs().is_zero() {
            break;
        }
        q_hat_inv = q_hat_inv.add(&power);
    }
    let tits = q_hat.add(&q_hat.transpose()).scaled(&rational::half());
    QuiverMatrices { q_tilde, q_hat, q_hat_inv, tits }
}

fn adjacency(q: &HasseQuiver) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(q.n, q.n);
    for &(i, j) in &q.arrows {
        m[(i, j)] = Rational::one();
    }
    m
}

/// Two distinct directed paths with common origin and terminus.
pub fn has_parallel_paths(q: &HasseQuiver) -> bool {
    let n = q.n;
    // Path counts by dynamic programming over a topological order.
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(i, j) in &q.arrows {
        out[i].push(j);
        indeg[j] += 1;
    }
    let mut topo: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut k = 0;
    while k < topo.len() {
        let v = topo[k];
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                topo.push(w);
            }
        }
        k += 1;
    }
    for &s in &topo {
        let mut count = vec![0u64; n];
        count[s] = 1;
        for &v in topo.iter().skip_while(|&&v| v != s) {
            if count[v] == 0 {
                continue;
            }
            if v != s && count[v] >= 2 {
                return true;
            }
            for &w in &out[v] {
                count[w] = count[w].saturating_add(count[v]);
            }
        }
    }
    false
}

/// `A(f_S) = ½(Q̂⁻¹ + (Q̂⁻¹)ᵀ)`.
pub fn matrix_identity_check(p: &Poset) -> bool {
    let m = quiver_matrices(p);
    let rhs = m.q_hat_inv.add(&m.q_hat_inv.transpose()).scaled(&rational::half());
    rhs == *QuadraticForm::of_poset(p).matrix()
}

/// The Tits form `𝒯_S` of the Hasse graph.
pub fn tits_form(p: &Poset) -> QuadraticForm {
    QuadraticForm { a: quiver_matrices(p).tits }
}

/// The unimodular `T = Q̂⁻¹` with `T·𝒜·Tᵀ = A(f_S)`, so `f_S(x) = 𝒯_S(x·T)`.
pub fn z_equivalence(p: &Poset) -> Result<RationalMatrix, QuadFormError> {
    if has_parallel_paths(&p.quiver()) {
        return Err(QuadFormError::ParallelPaths);
    }
    let m = quiver_matrices(p);
    let t = m.q_hat_inv;
    let lhs = t.mul(&m.tits)?.mul(&t.transpose())?;
    assert_eq!(lhs, *QuadraticForm::of_poset(p).matrix(), "integral equivalence must hold without parallel paths");
    Ok(t)
}
