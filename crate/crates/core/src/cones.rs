//! Cone membership: `C±`, `Ĉ±`, the stationary ray `St`, Dynkin vectors and
//! the explicit witness constructions for cyclic and path-shaped posets.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinAlgError, RationalMatrix};
use crate::lp::{feasible_point, lp, LpProblem, LpStatus};
use crate::poset::{contains_induced, crown, fence, gamma_class, v_poset, GammaClass, Poset};
use crate::quadform::QuadraticForm;
use crate::rational::{self, Rational, RationalVector};

pub const DEFAULT_DYNKIN_BOX: i64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("form is not 2-concave")]
    NotConcave,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("matrix is singular")]
    Singular,
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("pivot {0} is isolated: comparable with no other element")]
    IsolatedPivot(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cone {
    Cminus,
    Cplus,
    ChatMinus,
    ChatPlus,
    St,
    StPlus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeWitness {
    pub cone: Cone,
    #[serde(with = "rational::serde_str::vec")]
    pub vector: RationalVector,
    #[serde(with = "rational::serde_str::vec")]
    pub gradient: RationalVector,
    #[serde(rename = "sum", with = "rational::serde_str")]
    pub coordinate_sum: Rational,
}

impl ConeWitness {
    pub fn new(f: &QuadraticForm, cone: Cone, vector: RationalVector) -> Self {
        let gradient = f.gradient(&vector).expect("witness has the form's dimension");
        let coordinate_sum = rational::sum(&vector);
        Self { cone, vector, gradient, coordinate_sum }
    }

    /// Exact re-check of the cone's defining conditions.
    pub fn verify(&self, f: &QuadraticForm) -> bool {
        let Ok(g) = f.gradient(&self.vector) else {
            return false;
        };
        if g != self.gradient || rational::sum(&self.vector) != self.coordinate_sum {
            return false;
        }
        let nonzero = !rational::is_zero_vec(&self.vector);
        let all_le0 = g.iter().all(|x| !x.is_positive());
        let all_ge0 = g.iter().all(|x| !x.is_negative());
        let s = &self.coordinate_sum;
        let stationary = || self.vector.iter().all(Signed::is_positive) && g.iter().all_equal();
        match self.cone {
            Cone::Cminus => nonzero && s.is_zero() && all_le0,
            Cone::Cplus => nonzero && s.is_zero() && all_ge0,
            Cone::ChatMinus => nonzero && !s.is_negative() && all_le0,
            Cone::ChatPlus => nonzero && !s.is_positive() && all_ge0,
            Cone::St => stationary(),
            Cone::StPlus => stationary() && g.first().is_none_or(Signed::is_positive),
        }
    }

    /// Membership in `C̃`: a `C` vector with nonzero gradient.
    pub fn in_c_tilde(&self) -> bool {
        matches!(self.cone, Cone::Cminus | Cone::Cplus) && !rational::is_zero_vec(&self.gradient)
    }

    pub fn is_c(&self) -> bool {
        matches!(self.cone, Cone::Cminus | Cone::Cplus)
    }

    fn negated(&self, f: &QuadraticForm, cone: Cone) -> Self {
        Self::new(f, cone, rational::neg(&self.vector))
    }
}

fn ones(n: usize) -> RationalVector {
    vec![Rational::one(); n]
}

/// Column sums of `A`, i.e. the row giving `Σ_i (hA)_i`.
fn column_sums(a: &RationalMatrix) -> RationalVector {
    (0..a.cols()).map(|j| rational::sum(&a.column(j))).collect()
}

/// Null vectors of `A` lying in `H_n`.
pub fn c_null(f: &QuadraticForm) -> Option<ConeWitness> {
    let a = f.matrix();
    let n = f.n();
    let mut rows = a.to_rows();
    rows.push(ones(n));
    let stacked = RationalMatrix::from_rows(rows).ok()?;
    let v = stacked.nullspace().into_iter().next()?;
    Some(ConeWitness::new(f, Cone::Cminus, rational::primitive_signed(&v)))
}

/// A `C⁻` vector with nonzero gradient, if one exists.
pub fn c_tilde(f: &QuadraticForm) -> Option<ConeWitness> {
    let a = f.matrix();
    let n = f.n();
    let mut problem = LpProblem::new(n).eq(ones(n), Rational::zero());
    for i in 0..n {
        problem = problem.le(a.row(i).to_vec(), Rational::zero());
    }
    problem = problem.eq(column_sums(a), -Rational::one());
    let x = feasible_point(&problem)?;
    Some(ConeWitness::new(f, Cone::Cminus, rational::primitive_integer(&x)))
}

/// `C(f) ≠ ∅` decided exactly; the witness lies in `C⁻`.
pub fn c_cone(f: &QuadraticForm) -> Option<ConeWitness> {
    if f.n() == 0 {
        return None;
    }
    c_null(f).or_else(|| c_tilde(f))
}

/// A `Ĉ⁻` witness, if `Ĉ⁺ ∪ Ĉ⁻ ≠ ∅` (the two are negatives of each other).
pub fn hat_cones(f: &QuadraticForm) -> Option<ConeWitness> {
    let n = f.n();
    if n == 0 {
        return None;
    }
    let a = f.matrix();
    if let Some(v) = a.nullspace().into_iter().next() {
        let v = rational::primitive_signed(&v);
        let v = if rational::sum(&v).is_negative() { rational::neg(&v) } else { v };
        return Some(ConeWitness::new(f, Cone::ChatMinus, v));
    }
    let mut problem = LpProblem::new(n).ge(ones(n), Rational::zero());
    for i in 0..n {
        problem = problem.le(a.row(i).to_vec(), Rational::zero());
    }
    problem = problem.eq(column_sums(a), -Rational::one());
    let x = feasible_point(&problem)?;
    Some(ConeWitness::new(f, Cone::ChatMinus, rational::primitive_integer(&x)))
}

/// Turn a `Ĉ±` witness of a 2-concave form into a `C⁻` witness by
/// subtracting the coordinate sum from the first coordinate.
pub fn hat_to_c(f: &QuadraticForm, w: &ConeWitness) -> Result<ConeWitness, ConeError> {
    if !f.is_two_concave() {
        return Err(ConeError::NotConcave);
    }
    if !matches!(w.cone, Cone::ChatMinus | Cone::ChatPlus | Cone::Cminus | Cone::Cplus) || !w.verify(f) {
        return Err(ConeError::InvalidWitness(format!("{:?} witness does not verify", w.cone)));
    }
    let w = match w.cone {
        Cone::ChatPlus => w.negated(f, Cone::ChatMinus),
        Cone::Cplus => w.negated(f, Cone::Cminus),
        _ => w.clone(),
    };
    let out = shift_into_hyperplane(&w.vector)
        .ok_or_else(|| ConeError::InvalidWitness("one-dimensional form has empty H_n".into()))?;
    let c = ConeWitness::new(f, Cone::Cminus, out);
    if c.verify(f) {
        Ok(c)
    } else {
        Err(ConeError::InvalidWitness("transformed vector is not in C".into()))
    }
}

/// The coordinate move behind [`hat_to_c`]: with `d = Σx_i`, return
/// `(x₁ − d, x₂, …, x_n)`, or `(d, −d, 0, …, 0)` when `x = (d, 0, …, 0)`.
/// `None` only for the one-dimensional vector `(d)` with `d ≠ 0`.
pub fn shift_into_hyperplane(x: &[Rational]) -> Option<RationalVector> {
    let d = rational::sum(x);
    let mut out = x.to_vec();
    if d.is_zero() {
        return Some(out);
    }
    if x[0] == d && x[1..].iter().all(Zero::is_zero) {
        if x.len() < 2 {
            return None;
        }
        out[1] = -d;
    } else {
        out[0] = &x[0] - &d;
    }
    Some(out)
}

/// A strictly positive vector with all partial derivatives equal.
pub fn stationary_cone(f: &QuadraticForm) -> Option<ConeWitness> {
    let n = f.n();
    if n == 0 {
        return None;
    }
    let a = f.matrix();
    let w = if let Ok(inv) = a.inverse() {
        // Every stationary vector is a multiple of y = e·A⁻¹.
        let y = inv.vec_mul(&ones(n)).expect("square");
        if y.iter().all(Signed::is_positive) {
            rational::primitive_integer(&y)
        } else if y.iter().all(Signed::is_negative) {
            rational::primitive_integer(&rational::neg(&y))
        } else {
            return None;
        }
    } else {
        let mut problem = LpProblem::new(n).minimize(ones(n));
        for i in 1..n {
            problem = problem.eq(rational::sub(a.row(i), a.row(0)), Rational::zero());
        }
        for i in 0..n {
            problem = problem.lower_bound(i, Rational::one());
        }
        let r = lp(&problem);
        if r.status != LpStatus::Optimal {
            return None;
        }
        rational::primitive_integer(&r.point.expect("optimal point"))
    };
    let witness = ConeWitness::new(f, Cone::St, w);
    let positive = witness.gradient[0].is_positive();
    Some(ConeWitness { cone: if positive { Cone::StPlus } else { Cone::St }, ..witness })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dichotomy {
    StNonempty(ConeWitness),
    CNonempty(ConeWitness),
}

/// For `det A ≠ 0`, exactly one of `St(f)`, `C(f)` is nonempty; return a
/// witness for the nonempty one.
pub fn nonsingular_dichotomy(f: &QuadraticForm) -> Result<Dichotomy, ConeError> {
    let n = f.n();
    let inv = f.matrix().inverse().map_err(|e| match e {
        LinAlgError::Singular => ConeError::Singular,
        other => ConeError::LinAlg(other),
    })?;
    let y = inv.vec_mul(&ones(n))?;
    if let Some(st) = stationary_cone(f) {
        return Ok(Dichotomy::StNonempty(st));
    }
    // Nonnegative w ≠ 0 with w·y = 0.
    let mut w = rational::zeros(n);
    if let Some(k) = y.iter().position(Zero::is_zero) {
        w[k] = Rational::one();
    } else {
        let s = y.iter().position(Signed::is_negative).expect("mixed signs");
        let t = y.iter().position(Signed::is_positive).expect("mixed signs");
        w[s] = y[t].clone();
        w[t] = -y[s].clone();
    }
    let v = rational::neg(&inv.vec_mul(&w)?);
    let c = ConeWitness::new(f, Cone::Cminus, rational::primitive_integer(&v));
    if c.verify(f) {
        Ok(Dichotomy::CNonempty(c))
    } else {
        Err(ConeError::InvalidWitness("constructed vector is not in C".into()))
    }
}

/// An `m`-Dynkin vector: nonzero integer `d` with `d'_j = 0` for `j ≠ m` and
/// `0 ≤ d'_m ≤ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinWitness {
    #[serde(with = "rational::serde_str::vec")]
    pub vector: RationalVector,
    /// 0-based in memory, 1-based when serialized.
    #[serde(with = "crate::one_based")]
    pub pivot: usize,
    #[serde(with = "rational::serde_str")]
    pub pivot_gradient: Rational,
}

impl DynkinWitness {
    fn new(f: &QuadraticForm, vector: RationalVector, pivot: usize) -> Self {
        let g = f.gradient(&vector).expect("dimension");
        Self { pivot_gradient: g[pivot].clone(), vector, pivot }
    }

    pub fn verify(&self, f: &QuadraticForm) -> bool {
        let Ok(g) = f.gradient(&self.vector) else {
            return false;
        };
        let two = rational::int(2);
        self.pivot < g.len()
            && rational::is_integral(&self.vector)
            && !rational::is_zero_vec(&self.vector)
            && g[self.pivot] == self.pivot_gradient
            && !self.pivot_gradient.is_negative()
            && self.pivot_gradient <= two
            && g.iter().enumerate().all(|(j, x)| j == self.pivot || x.is_zero())
    }
}

/// Exact search for an `m`-Dynkin vector. The solutions of `(dA)_j = 0`,
/// `j ≠ m`, form a line when `A` is invertible (decided exactly) and contain
/// the null space of `A` otherwise. In the
/// latter case integer combinations of the basis with coefficients in
/// `[-box_bound, box_bound]` are scanned for the smallest witness.
pub fn dynkin_vector(f: &QuadraticForm, m: usize, box_bound: i64) -> Option<DynkinWitness> {
    let n = f.n();
    if m >= n {
        return None;
    }
    let a = f.matrix();
    let others: Vec<Vec<Rational>> = (0..n).filter(|&j| j != m).map(|j| a.row(j).to_vec()).collect();
    let basis = if others.is_empty() {
        vec![vec![Rational::one()]]
    } else {
        RationalMatrix::from_rows(others).ok()?.nullspace()
    };
    let orient = |d: RationalVector| -> Option<DynkinWitness> {
        if rational::is_zero_vec(&d) {
            return None;
        }
        let d = rational::primitive_integer(&d);
        let w = DynkinWitness::new(f, d, m);
        let w = if w.pivot_gradient.is_negative() { DynkinWitness::new(f, rational::neg(&w.vector), m) } else { w };
        w.verify(f).then_some(w)
    };
    if basis.len() == 1 {
        return orient(basis[0].clone());
    }
    let key = |w: &DynkinWitness| {
        let max = w.vector.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero);
        let l1: Rational = w.vector.iter().map(|x| x.abs()).sum();
        (max, l1)
    };
    let mut best: Option<DynkinWitness> = None;
    let mut consider = |cand: Option<DynkinWitness>| {
        if let Some(c) = cand {
            let better = match &best {
                None => true,
                Some(b) => {
                    let (kc, kb) = (key(&c), key(b));
                    kc < kb
                        || (kc == kb && rational::primitive_signed(&c.vector) < rational::primitive_signed(&b.vector))
                }
            };
            if better {
                best = Some(c);
            }
        }
    };
    for v in a.nullspace() {
        consider(orient(v));
    }
    if basis.len() <= 3 {
        let range = -box_bound..=box_bound;
        for coeffs in (0..basis.len()).map(|_| range.clone()).multi_cartesian_product() {
            let mut d = rational::zeros(n);
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    d = rational::add(&d, &rational::scale(b, &rational::int(*c)));
                }
            }
            consider(orient(d));
        }
    } else {
        for b in &basis {
            consider(orient(b.clone()));
        }
    }
    best
}

/// Shape-specific explicit Dynkin vectors for standard stars and `D̃_n`.
pub fn closed_form_dynkin(p: &Poset) -> Result<DynkinWitness, ConeError> {
    let f = QuadraticForm::of_poset(p);
    let class = gamma_class(p).map_err(|e| ConeError::WrongShape(e.to_string()))?;
    let mut d = rational::zeros(p.len());
    let pivot;
    match class {
        GammaClass::ExtendedD(_) => {
            return dynkin_vector(&f, 0, DEFAULT_DYNKIN_BOX)
                .ok_or_else(|| ConeError::WrongShape("no Dynkin vector for D̃".into()));
        }
        GammaClass::D(_) => {
            let (centre, arms) = star_layout(p).ok_or_else(|| ConeError::WrongShape("not a star".into()))?;
            let mut arms = arms;
            // Fork ends first, long arm last.
            arms.sort_by_key(Vec::len);
            d[centre] = rational::int(-2);
            d[arms[0][0]] = Rational::one();
            d[arms[1][0]] = Rational::one();
            let long = &arms[2];
            pivot = *long.last().expect("nonempty arm");
            d[pivot] = rational::int(2);
        }
        GammaClass::E6
        | GammaClass::E7
        | GammaClass::E8
        | GammaClass::ExtendedE6
        | GammaClass::ExtendedE7
        | GammaClass::ExtendedE8 => {
            let (centre, arms) = star_layout(p).ok_or_else(|| ConeError::WrongShape("not a star".into()))?;
            let extended = class.is_extended_dynkin();
            // Arm sizes with the centre counted; `grow` is the arm that is one
            // short of the extended diagram.
            let sizes: Vec<usize> = arms.iter().map(|a| a.len() + 1).collect();
            let grow = match class {
                GammaClass::E6 => sizes.iter().position(|&s| s == 2),
                GammaClass::E7 => sizes.iter().position(|&s| s == 3),
                GammaClass::E8 => sizes.iter().position(|&s| s == 5),
                _ => None,
            };
            let mut ext = sizes.clone();
            if let Some(g) = grow {
                ext[g] += 1;
            }
            let m3 = *ext.iter().max().expect("three arms");
            d[centre] = -rational::int(m3 as i64);
            for (arm, &mj) in arms.iter().zip(&ext) {
                for &v in arm {
                    d[v] = rational::int((m3 / mj) as i64);
                }
            }
            match grow {
                Some(g) if !extended => {
                    pivot = *arms[g].last().expect("nonempty arm");
                    d[pivot] = rational::int(2 * (m3 / ext[g]) as i64);
                }
                _ => pivot = centre,
            }
        }
        other => return Err(ConeError::WrongShape(format!("no closed form for {other}"))),
    }
    let w = DynkinWitness::new(&f, d, pivot);
    if w.verify(&f) {
        Ok(w)
    } else {
        Err(ConeError::WrongShape("orientation is not standard".into()))
    }
}

/// Centre and arms (each from the centre outward) of a tree with exactly one
/// branch point.
pub fn star_layout(p: &Poset) -> Option<(usize, Vec<Vec<usize>>)> {
    let adj = p.graph().neighbors();
    let branch: Vec<usize> = (0..p.len()).filter(|&v| adj[v].len() >= 3).collect();
    let [centre] = branch.as_slice() else {
        return None;
    };
    let arms = adj[*centre]
        .iter()
        .map(|&first| {
            let mut arm = vec![first];
            let (mut prev, mut cur) = (*centre, first);
            while adj[cur].len() == 2 {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                arm.push(next);
                prev = cur;
                cur = next;
            }
            arm
        })
        .collect();
    Some((*centre, arms))
}

/// A `C` vector from an `m`-Dynkin vector.
pub fn dynkin_to_c(f: &QuadraticForm, dw: &DynkinWitness) -> Result<ConeWitness, ConeError> {
    if !dw.verify(f) {
        return Err(ConeError::InvalidWitness("not a Dynkin vector".into()));
    }
    let m = dw.pivot;
    let a = f.matrix();
    if (0..f.n()).all(|j| j == m || a[(m, j)].is_zero()) {
        return Err(ConeError::IsolatedPivot(m));
    }
    let d = &dw.vector;
    let dbar = rational::sum(d);
    let out = if dbar.is_zero() {
        let g = f.gradient(d)?;
        let cone = if rational::is_zero_vec(&g) { Cone::Cminus } else { Cone::Cplus };
        ConeWitness::new(f, cone, d.clone())
    } else if dbar.is_negative() {
        hat_to_c(f, &ConeWitness::new(f, Cone::ChatPlus, d.clone()))?
    } else {
        let mut u = d.clone();
        u[m] = &d[m] - &dbar;
        ConeWitness::new(f, Cone::Cminus, u)
    };
    if out.verify(f) {
        Ok(out)
    } else {
        Err(ConeError::InvalidWitness("constructed vector is not in C".into()))
    }
}

fn check_embedding(p: &Poset, pattern: &Poset, emb: &[usize], name: &str) -> Result<(), ConeError> {
    let distinct = emb.iter().all_unique();
    if emb.len() != pattern.len() || emb.iter().any(|&i| i >= p.len()) || !distinct {
        return Err(ConeError::PreconditionFailed(format!("embedding does not index {name}")));
    }
    if p.induced(emb).relations() != pattern.relations() {
        return Err(ConeError::PreconditionFailed(format!("embedded subset is not {name}")));
    }
    Ok(())
}

fn finish(f: &QuadraticForm, v: RationalVector) -> Result<ConeWitness, ConeError> {
    let w = ConeWitness::new(f, Cone::Cminus, v);
    if w.verify(f) {
        Ok(w)
    } else {
        Err(ConeError::InvalidWitness("constructed vector is not in C".into()))
    }
}

/// `v = −1` on `h⁻, h⁺` and `1` on `h₁, h₂` for `S ⊇ V`, `S ⊉ W⁴`.
/// `emb` lists `(h⁻, h₁, h₂, h⁺)`.
pub fn lemma9_witness(p: &Poset, emb: &[usize]) -> Result<ConeWitness, ConeError> {
    check_embedding(p, &v_poset(), emb, "V")?;
    if contains_induced(p, &crown(2).expect("k = 2")).is_some() {
        return Err(ConeError::PreconditionFailed("poset contains W^4".into()));
    }
    let mut v = rational::zeros(p.len());
    for (k, &e) in emb.iter().enumerate() {
        v[e] = rational::int(if k == 0 || k == 3 { -1 } else { 1 });
    }
    finish(&QuadraticForm::of_poset(p), v)
}

/// `v = −1` on minus points and `1` on plus points of an embedded crown
/// `W^{2k}`, listed as in [`crown`]. Fails, naming the point, when some
/// outside point sees different numbers of minus and plus points, which
/// certifies that `f_S` is not positive semidefinite.
pub fn lemma10_witness(p: &Poset, emb: &[usize]) -> Result<ConeWitness, ConeError> {
    if emb.len() < 4 || !emb.len().is_multiple_of(2) {
        return Err(ConeError::PreconditionFailed("crown embedding needs 2k >= 4 points".into()));
    }
    let k = emb.len() / 2;
    check_embedding(p, &crown(k).expect("k >= 2"), emb, "W^{2k}")?;
    for t in (0..p.len()).filter(|t| !emb.contains(t)) {
        let minus = emb[..k].iter().filter(|&&s| p.comparable(s, t)).count();
        let plus = emb[k..].iter().filter(|&&s| p.comparable(s, t)).count();
        if minus != plus {
            return Err(ConeError::PreconditionFailed(format!(
                "{} sees {minus} minus and {plus} plus points; f_S is not positive semidefinite",
                p.label(t)
            )));
        }
    }
    let mut v = rational::zeros(p.len());
    for (i, &e) in emb.iter().enumerate() {
        v[e] = rational::int(if i < k { -1 } else { 1 });
    }
    finish(&QuadraticForm::of_poset(p), v)
}

/// The vector on an embedded fence `W^{k,k+1}` or `W^{k+1,k}` (points listed
/// as in [`fence`]: `minus` minus points, then plus points) for `Γ(S) = A_n`
/// whose two outer points are not junction points.
pub fn lemma11_witness(p: &Poset, emb: &[usize], minus: usize) -> Result<ConeWitness, ConeError> {
    let plus = emb.len().saturating_sub(minus);
    let pattern = fence(minus, plus).map_err(|e| ConeError::PreconditionFailed(e.to_string()))?;
    check_embedding(p, &pattern, emb, "a fence")?;
    if !p.graph().is_path() {
        return Err(ConeError::PreconditionFailed("Γ(S) is not a path".into()));
    }
    // The longer side carries the outer points.
    let (inner, outer): (&[usize], &[usize]) =
        if plus > minus { (&emb[..minus], &emb[minus..]) } else { (&emb[minus..], &emb[..minus]) };
    let junction = p.structure().junction_points;
    let ends = [outer[0], outer[outer.len() - 1]];
    if let Some(&bad) = ends.iter().find(|e| junction.contains(e)) {
        return Err(ConeError::PreconditionFailed(format!("outer point {} is a junction point", p.label(bad))));
    }
    let mut v = rational::zeros(p.len());
    for &i in inner {
        v[i] = rational::int(-2);
    }
    for (j, &o) in outer.iter().enumerate() {
        v[o] = rational::int(if j == 0 || j + 1 == outer.len() { 1 } else { 2 });
    }
    finish(&QuadraticForm::of_poset(p), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::*;
    use crate::quadform::form_of_poset;
    use crate::rational::{int, vec_of};

    fn form(rows: &[&[i64]]) -> QuadraticForm {
        QuadraticForm::new(RationalMatrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn crown_cones() {
        let f = form_of_poset(&crown(2).unwrap());
        let c = c_cone(&f).unwrap();
        assert_eq!(c.vector, vec_of(&[1, 1, -1, -1]));
        assert!(c.verify(&f) && !c.in_c_tilde());
        let st = stationary_cone(&f).unwrap();
        assert_eq!(st.vector, vec_of(&[1, 1, 1, 1]));
        assert_eq!(st.cone, Cone::StPlus);
        assert!(c_tilde(&f).is_none());
    }

    #[test]
    fn positive_definite_sum_of_squares() {
        let f = form(&[&[1, 0], &[0, 1]]);
        assert!(c_cone(&f).is_none());
        assert!(hat_cones(&f).is_none());
    }

    #[test]
    fn example4_cones() {
        let f = form_of_poset(&example4());
        assert!(c_cone(&f).is_none());
        let st = stationary_cone(&f).unwrap();
        assert_eq!(st.vector, vec_of(&[1, 2, 1, 1, 2, 1]));
        assert_eq!(st.gradient, vec_of(&[6; 6]));
        assert!(matches!(nonsingular_dichotomy(&f), Ok(Dichotomy::StNonempty(_))));
    }

    #[test]
    fn indefinite_diagonal() {
        let f = form(&[&[1, 0], &[0, -1]]);
        assert!(stationary_cone(&f).is_none());
        match nonsingular_dichotomy(&f).unwrap() {
            Dichotomy::CNonempty(w) => assert!(w.verify(&f)),
            other => panic!("unexpected {other:?}"),
        }
        let z2 = form_of_poset(&chain(2));
        match nonsingular_dichotomy(&z2).unwrap() {
            Dichotomy::StNonempty(w) => assert_eq!(w.vector, vec_of(&[1, 1])),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(nonsingular_dichotomy(&form_of_poset(&crown(2).unwrap())), Err(ConeError::Singular));
    }

    #[test]
    fn relaxed_witness_moves_into_c() {
        let f = form_of_poset(&example2());
        let d = ConeWitness::new(&f, Cone::ChatMinus, vec_of(&[-2, 1, 1, 1, 1]));
        assert!(d.verify(&f));
        assert_eq!(hat_to_c(&f, &d).unwrap().vector, vec_of(&[-4, 1, 1, 1, 1]));
        let zero = ConeWitness::new(&f, Cone::ChatMinus, rational::zeros(5));
        assert!(matches!(hat_to_c(&f, &zero), Err(ConeError::InvalidWitness(_))));
        let c = c_cone(&form_of_poset(&crown(2).unwrap())).unwrap();
        let g = form_of_poset(&crown(2).unwrap());
        assert_eq!(hat_to_c(&g, &c).unwrap(), c);
    }

    #[test]
    fn hyperplane_shift_edge_cases() {
        assert_eq!(shift_into_hyperplane(&vec_of(&[3, 0, 0])), Some(vec_of(&[3, -3, 0])));
        assert_eq!(shift_into_hyperplane(&vec_of(&[1, 2, 0])), Some(vec_of(&[-2, 2, 0])));
        assert_eq!(shift_into_hyperplane(&vec_of(&[1, -1])), Some(vec_of(&[1, -1])));
        let f = QuadraticForm::new(RationalMatrix::from_i64(&[&[0, 0], &[0, 1]])).unwrap();
        let w = ConeWitness::new(&f, Cone::ChatMinus, vec_of(&[1, 0]));
        assert!(w.verify(&f));
        assert_eq!(hat_to_c(&f, &w), Err(ConeError::NotConcave));
    }

    #[test]
    fn example2_dynkin() {
        let f = form_of_poset(&example2());
        let d = dynkin_vector(&f, 0, DEFAULT_DYNKIN_BOX).unwrap();
        assert_eq!(d.vector, vec_of(&[-2, 1, 1, 1, 1]));
        assert_eq!(d.pivot_gradient, int(0));
        let at_last = DynkinWitness { pivot: 4, ..d.clone() };
        assert_eq!(dynkin_to_c(&f, &at_last).unwrap().vector, vec_of(&[-2, 1, 1, 1, -1]));
        assert_eq!(dynkin_to_c(&f, &d).unwrap().vector, vec_of(&[-4, 1, 1, 1, 1]));
    }

    #[test]
    fn chain_has_no_dynkin_vector() {
        let f = form_of_poset(&chain(2));
        assert!(dynkin_vector(&f, 0, DEFAULT_DYNKIN_BOX).is_none());
        assert!(dynkin_vector(&f, 1, DEFAULT_DYNKIN_BOX).is_none());
    }

    #[test]
    fn e8_closed_form() {
        let p = dynkin_e(8).unwrap();
        let w = closed_form_dynkin(&p).unwrap();
        assert_eq!(w.pivot, 7);
        assert_eq!(w.pivot_gradient, int(1));
        assert_eq!(w.vector, vec_of(&[-6, 3, 2, 2, 1, 1, 1, 2]));
        let e = closed_form_dynkin(&extended_e(8).unwrap()).unwrap();
        assert_eq!(e.vector, vec_of(&[-6, 3, 2, 2, 1, 1, 1, 1, 1]));
        assert_eq!(e.pivot_gradient, int(0));
        let f = form_of_poset(&p);
        let generic = dynkin_vector(&f, 7, DEFAULT_DYNKIN_BOX).unwrap();
        assert_eq!(generic.vector, w.vector);
    }

    #[test]
    fn d_closed_form() {
        let w = closed_form_dynkin(&dynkin_d(6).unwrap()).unwrap();
        assert_eq!(w.pivot_gradient, int(2));
        assert_eq!(w.vector, vec_of(&[-2, 1, 1, 0, 0, 2]));
        let reoriented = dynkin_d(6).unwrap().reorient(0, 1).unwrap();
        assert!(closed_form_dynkin(&reoriented).is_err());
        assert!(closed_form_dynkin(&chain(3)).is_err());
    }

    #[test]
    fn lemma9_on_v() {
        let w = lemma9_witness(&v_poset(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(w.vector, vec_of(&[-1, 1, 1, -1]));
        assert_eq!(w.gradient, vec_of(&[-1, 0, 0, -1]));
        assert!(lemma9_witness(&v_poset(), &[0, 1, 3, 2]).is_err());
    }

    #[test]
    fn lemma10_on_crown() {
        let w = lemma10_witness(&crown(2).unwrap(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(w.vector, vec_of(&[-1, -1, 1, 1]));
        assert!(rational::is_zero_vec(&w.gradient));
        // An extra point above a single minus point unbalances the crown.
        let p = Poset::from_relations(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (0, 4)]).unwrap();
        assert!(matches!(lemma10_witness(&p, &[0, 1, 2, 3]), Err(ConeError::PreconditionFailed(_))));
        assert!(!form_of_poset(&p).definiteness().is_psd());
    }

    #[test]
    fn lemma11_on_fence() {
        let p = fence(2, 3).unwrap();
        let w = lemma11_witness(&p, &[0, 1, 2, 3, 4], 2).unwrap();
        assert_eq!(w.vector, vec_of(&[-2, -2, 1, 2, 1]));
        assert_eq!(w.gradient, vec_of(&[-1, -1, 0, 0, 0]));
        let q = fence(3, 2).unwrap();
        let w = lemma11_witness(&q, &[0, 1, 2, 3, 4], 3).unwrap();
        assert_eq!(w.vector, vec_of(&[1, 2, 1, -2, -2]));
    }
}
