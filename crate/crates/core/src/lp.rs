//! Exact two-phase simplex over rationals with Bland's anti-cycling rule.
//!
//! Problems are stated over "original" variables that are either free or
//! bounded below. Internally every variable is shifted or split so that the
//! tableau only carries nonnegative columns.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational, RationalVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Minimise `objective · x` subject to equality rows, `≤` rows and
/// optional per-variable lower bounds (`None` means free).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: RationalVector,
    pub equalities: Vec<(RationalVector, Rational)>,
    pub inequalities: Vec<(RationalVector, Rational)>,
    pub lower_bounds: Vec<Option<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub point: Option<RationalVector>,
    pub value: Option<Rational>,
}

impl LpProblem {
    /// Feasibility problem in `n` free variables.
    pub fn new(n: usize) -> Self {
        Self {
            objective: rational::zeros(n),
            equalities: Vec::new(),
            inequalities: Vec::new(),
            lower_bounds: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn minimize(mut self, objective: RationalVector) -> Self {
        assert_eq!(objective.len(), self.num_vars());
        self.objective = objective;
        self
    }

    pub fn eq(mut self, row: RationalVector, rhs: Rational) -> Self {
        assert_eq!(row.len(), self.num_vars());
        self.equalities.push((row, rhs));
        self
    }

    pub fn le(mut self, row: RationalVector, rhs: Rational) -> Self {
        assert_eq!(row.len(), self.num_vars());
        self.inequalities.push((row, rhs));
        self
    }

    pub fn ge(self, row: RationalVector, rhs: Rational) -> Self {
        self.le(rational::neg(&row), -rhs)
    }

    pub fn lower_bound(mut self, var: usize, bound: Rational) -> Self {
        self.lower_bounds[var] = Some(bound);
        self
    }

    pub fn nonnegative(mut self) -> Self {
        for b in &mut self.lower_bounds {
            *b = Some(Rational::zero());
        }
        self
    }

    /// Exact check of every constraint at `x`.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self.equalities.iter().all(|(a, b)| &rational::dot(a, x) == b)
            && self.inequalities.iter().all(|(a, b)| &rational::dot(a, x) <= b)
            && self.lower_bounds.iter().zip(x).all(|(l, xi)| l.as_ref().is_none_or(|l| xi >= l))
    }
}

enum Column {
    /// `x = shift + y`
    Shifted(usize),
    /// `x = y⁺ − y⁻`
    Split(usize, usize),
}

struct Tableau {
    /// `rows × (cols + 1)`; last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for v in self.t[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= p * &factor;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut r: Vec<Rational> = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, rj) in r.iter_mut().enumerate() {
                let a = &self.t[i][j];
                if !a.is_zero() {
                    *rj -= cb * a;
                }
            }
        }
        r
    }

    /// Runs primal simplex with Bland's rule. Returns `false` on unboundedness.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let reduced = self.reduced_costs(cost);
            let Some(enter) = (0..self.cols).find(|&j| allowed[j] && reduced[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr || (ratio == lr && self.basis[i] < self.basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Solve an LP exactly.
pub fn lp(problem: &LpProblem) -> LpResult {
    let n = problem.num_vars();

    // Column layout for the original variables.
    let mut columns = Vec::with_capacity(n);
    let mut ny = 0;
    for bound in &problem.lower_bounds {
        if bound.is_some() {
            columns.push(Column::Shifted(ny));
            ny += 1;
        } else {
            columns.push(Column::Split(ny, ny + 1));
            ny += 2;
        }
    }
    let shift: RationalVector = problem.lower_bounds.iter().map(|b| b.clone().unwrap_or_else(Rational::zero)).collect();

    let expand = |row: &[Rational]| -> RationalVector {
        let mut out = rational::zeros(ny);
        for (j, col) in columns.iter().enumerate() {
            match *col {
                Column::Shifted(k) => out[k] = row[j].clone(),
                Column::Split(p, q) => {
                    out[p] = row[j].clone();
                    out[q] = -row[j].clone();
                }
            }
        }
        out
    };

    let n_eq = problem.equalities.len();
    let n_le = problem.inequalities.len();
    let m = n_eq + n_le;
    let n_slack = n_le;
    let cols = ny + n_slack + m;
    let art0 = ny + n_slack;

    let mut t = Vec::with_capacity(m);
    for (k, (a, b)) in problem.equalities.iter().chain(&problem.inequalities).enumerate() {
        let mut row = expand(a);
        row.resize(cols + 1, Rational::zero());
        if k >= n_eq {
            row[ny + (k - n_eq)] = Rational::one();
        }
        let mut rhs = b - rational::dot(a, &shift);
        if rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        row[art0 + k] = Rational::one();
        row[cols] = rhs;
        t.push(row);
    }
    let mut tab = Tableau { t, basis: (art0..art0 + m).collect(), cols };

    // Phase I.
    let mut phase1 = rational::zeros(cols);
    for c in phase1.iter_mut().skip(art0) {
        *c = Rational::one();
    }
    let all = vec![true; cols];
    tab.optimize(&phase1, &all);
    let infeas: Rational =
        tab.basis.iter().enumerate().filter(|(_, &b)| b >= art0).fold(Rational::zero(), |acc, (i, _)| acc + tab.rhs(i));
    if infeas.is_positive() {
        return LpResult { status: LpStatus::Infeasible, point: None, value: None };
    }

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= art0 {
            match (0..art0).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase II.
    let mut cost = expand(&problem.objective);
    cost.resize(cols, Rational::zero());
    let allowed: Vec<bool> = (0..cols).map(|j| j < art0).collect();
    if !tab.optimize(&cost, &allowed) {
        return LpResult { status: LpStatus::Unbounded, point: None, value: None };
    }

    let mut y = rational::zeros(cols);
    for (i, &b) in tab.basis.iter().enumerate() {
        y[b] = tab.rhs(i).clone();
    }
    let x: RationalVector = columns
        .iter()
        .zip(&shift)
        .map(|(col, s)| match *col {
            Column::Shifted(k) => s + &y[k],
            Column::Split(p, q) => &y[p] - &y[q],
        })
        .collect();
    debug_assert!(problem.is_feasible_point(&x));
    let value = rational::dot(&problem.objective, &x);
    LpResult { status: LpStatus::Optimal, point: Some(x), value: Some(value) }
}

/// Convenience: a feasible point, if any.
pub fn feasible_point(problem: &LpProblem) -> Option<RationalVector> {
    let p = LpProblem { objective: rational::zeros(problem.num_vars()), ..problem.clone() };
    lp(&p).point
}
