//! Finite posets stored as their full strict order relation.
//!
//! Elements are 0-indexed in the Rust API. Text formats and JSON use
//! 1-indexed elements.

mod embed;
mod enumerate;
mod family;
mod structure;
pub mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use embed::{contains_induced, is_isomorphic};
pub use enumerate::{census, enumerate_posets, enumerate_posets_capped, CanonicalForm, DEFAULT_ENUMERATION_CAP};
pub use family::*;
pub use structure::{gamma_class, standardize, GammaClass, StructureReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation closure contains a cycle through element {0}")]
    CycleInOrder(usize),
    #[error("element index {index} out of range for a poset of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("Hasse graph is not connected")]
    NotConnected,
    #[error("graph contains a cycle")]
    CyclicGraph,
    #[error("({0}, {1}) is not a valid arrow for this operation")]
    InvalidArrow(usize, usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("poset size {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// A finite strict partial order. `lt(i, j)` means `s_i < s_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    lt: Vec<bool>,
    labels: Option<Vec<String>>,
}

/// Transitive reduction of a poset: arrows `i → j` for covers `s_i ⋖ s_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseQuiver {
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
}

/// Undirected Hasse graph Γ(S).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseGraph {
    pub n: usize,
    /// Unordered edges stored with the smaller index first.
    pub edges: Vec<(usize, usize)>,
}

impl HasseGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        edges.dedup();
        Self { n, edges }
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors().iter().map(Vec::len).collect()
    }

    /// Connected components, each sorted, in order of least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.n, &self.neighbors(), |_| true)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_acyclic(&self) -> bool {
        self.edges.len() + self.components().len() == self.n
    }

    /// Γ is a single path (A_n), including the one-vertex graph.
    pub fn is_path(&self) -> bool {
        self.is_connected() && self.is_acyclic() && self.degrees().iter().all(|&d| d <= 2)
    }
}

/// Connected components of the subgraph induced on vertices accepted by `keep`.
pub(crate) fn components_of(n: usize, adj: &[Vec<usize>], keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] || !keep(start) {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for &w in &adj[v] {
                if !seen[w] && keep(w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

impl Poset {
    /// The antichain on `n` elements.
    pub fn empty(n: usize) -> Self {
        Self { n, lt: vec![false; n * n], labels: None }
    }

    /// Transitive closure of `pairs` (each `(i, j)` meaning `s_i < s_j`).
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut p = Self::empty(n);
        for &(i, j) in pairs {
            for idx in [i, j] {
                if idx >= n {
                    return Err(PosetError::IndexOutOfRange { index: idx, n });
                }
            }
            if i == j {
                return Err(PosetError::CycleInOrder(i));
            }
            p.lt[i * n + j] = true;
        }
        p.close()?;
        Ok(p)
    }

    fn close(&mut self) -> Result<(), PosetError> {
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                if !self.lt[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if self.lt[k * n + j] {
                        self.lt[i * n + j] = true;
                    }
                }
            }
        }
        match (0..n).find(|&i| self.lt[i * n + i]) {
            Some(i) => Err(PosetError::CycleInOrder(i)),
            None => Ok(()),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.lt[i * self.n + j]
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i)
    }

    /// All strict relations `(i, j)` with `s_i < s_j`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.lt(i, j)).collect()
    }

    pub fn below_count(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.lt(j, i)).count()
    }

    pub fn above_count(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.lt(i, j)).count()
    }

    /// The Hasse quiver Q(S).
    pub fn quiver(&self) -> HasseQuiver {
        let n = self.n;
        let arrows =
            self.relations().into_iter().filter(|&(i, j)| !(0..n).any(|k| self.lt(i, k) && self.lt(k, j))).collect();
        HasseQuiver { n, arrows }
    }

    /// Γ(S): the quiver with arrows replaced by edges.
    pub fn graph(&self) -> HasseGraph {
        HasseGraph::new(self.n, self.quiver().arrows)
    }

    pub fn hasse(&self) -> (HasseQuiver, HasseGraph) {
        let q = self.quiver();
        let g = HasseGraph::new(self.n, q.arrows.iter().copied());
        (q, g)
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.comparable(i, j)))
    }

    /// The antiisomorphic (dual) poset S*.
    pub fn antiisomorph(&self) -> Self {
        let n = self.n;
        let mut lt = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                lt[j * n + i] = self.lt(i, j);
            }
        }
        Self { n, lt, labels: self.labels.clone() }
    }

    /// S(φ): reverse the arrow `from → to` of Q(S) and re-close. Fails when
    /// the reversed quiver is not the Hasse quiver of its closure.
    pub fn reorient(&self, from: usize, to: usize) -> Result<Self, PosetError> {
        let q = self.quiver();
        if !q.arrows.contains(&(from, to)) {
            return Err(PosetError::InvalidArrow(from, to));
        }
        let mut arrows: Vec<(usize, usize)> =
            q.arrows.iter().map(|&a| if a == (from, to) { (to, from) } else { a }).collect();
        let mut p = Self::from_relations(self.n, &arrows).map_err(|_| PosetError::InvalidArrow(from, to))?;
        arrows.sort_unstable();
        if p.quiver().arrows != arrows {
            return Err(PosetError::InvalidArrow(from, to));
        }
        p.labels = self.labels.clone();
        Ok(p)
    }

    /// `self ⊔ other`: `other`'s elements follow `self`'s, no cross relations.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut p = Self::empty(n);
        for (i, j) in self.relations() {
            p.lt[i * n + j] = true;
        }
        for (i, j) in other.relations() {
            p.lt[(self.n + i) * n + self.n + j] = true;
        }
        if self.labels.is_some() || other.labels.is_some() {
            let mut labels = self.default_labels();
            labels.extend(other.default_labels());
            p.labels = Some(labels);
        }
        p
    }

    fn default_labels(&self) -> Vec<String> {
        self.labels.clone().unwrap_or_else(|| (1..=self.n).map(|i| format!("s{i}")).collect())
    }

    /// Induced subposet on `idx` (in that order).
    pub fn induced(&self, idx: &[usize]) -> Self {
        let m = idx.len();
        let mut p = Self::empty(m);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                p.lt[a * m + b] = self.lt(i, j);
            }
        }
        p.labels = self.labels.as_ref().map(|l| idx.iter().map(|&i| l[i].clone()).collect());
        p
    }

    /// Remove one element.
    pub fn delete(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != v).collect();
        self.induced(&keep)
    }

    /// Relabel: element `i` of `self` becomes element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut p = Self::empty(n);
        for (i, j) in self.relations() {
            p.lt[perm[i] * n + perm[j]] = true;
        }
        p
    }

    /// Connected components of Γ(S) as vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        // Comparability and Hasse graphs share components.
        let adj: Vec<Vec<usize>> =
            (0..self.n).map(|i| (0..self.n).filter(|&j| self.comparable(i, j)).collect()).collect();
        components_of(self.n, &adj, |_| true)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Display name of element `i` (1-indexed default).
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("s{}", i + 1),
        }
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self.quiver().arrows.iter().map(|(i, j)| format!("{}<{}", i + 1, j + 1)).collect();
        write!(f, "Poset(n={}; {})", self.n, covers.join(", "))
    }
}
