use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{Poset, PosetError};

pub const DEFAULT_ENUMERATION_CAP: usize = 7;

/// Isomorphism invariant of a poset: the lexicographically least row-major
/// encoding of the order relation over all relabelings that respect a
/// refined level partition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn of(p: &Poset) -> Self {
        canonical(p).0
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Compact text key, used to index campaign output.
    pub fn key(&self) -> String {
        let mut s = format!("{}:", self.n);
        for chunk in self.bits.chunks(4) {
            let nibble = chunk.iter().enumerate().fold(0u32, |acc, (k, &b)| acc | (u32::from(b) << (3 - k)));
            s.push(char::from_digit(nibble, 16).expect("nibble below 16"));
        }
        s
    }

    /// The poset whose relation is this encoding.
    pub fn to_poset(&self) -> Poset {
        let n = self.n;
        let pairs: Vec<(usize, usize)> = (0..n * n).filter(|&k| self.bits[k]).map(|k| (k / n, k % n)).collect();
        Poset::from_relations(n, &pairs).expect("canonical encoding is a closed order")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl Poset {
    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm::of(self)
    }

    /// Isomorphic copy with elements in canonical order.
    pub fn canonical(&self) -> Poset {
        let (_, order) = canonical(self);
        let mut p = self.induced(&order);
        p.labels = None;
        p
    }
}

/// Returns the canonical form and the old element placed at each new position.
fn canonical(p: &Poset) -> (CanonicalForm, Vec<usize>) {
    let n = p.len();
    let cells = refined_cells(p);
    let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);
    search(p, &cells, 0, &mut order, &mut vec![false; n], &mut best);
    let (bits, order) = best.unwrap_or_default();
    (CanonicalForm { n, bits }, order)
}

fn search(
    p: &Poset,
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut Option<(Vec<bool>, Vec<usize>)>,
) {
    let Some(members) = cells.get(cell) else {
        let n = p.len();
        let bits: Vec<bool> = (0..n * n).map(|k| p.lt(order[k / n], order[k % n])).collect();
        if best.as_ref().is_none_or(|(b, _)| bits < *b) {
            *best = Some((bits, order.clone()));
        }
        return;
    };
    let done = order.len() - cells[..cell].iter().map(Vec::len).sum::<usize>();
    if done == members.len() {
        search(p, cells, cell + 1, order, used, best);
        return;
    }
    for &v in members {
        if used[v] {
            continue;
        }
        used[v] = true;
        order.push(v);
        search(p, cells, cell, order, used, best);
        order.pop();
        used[v] = false;
    }
}

/// Partition elements by iterated (below, above) signatures; cells come in
/// a relabeling-invariant order.
fn refined_cells(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    let rank_of = |keys: &[Vec<usize>]| -> Vec<usize> {
        let mut distinct: Vec<&Vec<usize>> = keys.iter().collect();
        distinct.sort();
        distinct.dedup();
        keys.iter().map(|k| distinct.binary_search(&k).expect("key present")).collect()
    };
    let initial: Vec<Vec<usize>> = (0..n).map(|v| vec![p.below_count(v), p.above_count(v)]).collect();
    let mut rank = rank_of(&initial);
    loop {
        let keys: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut below: Vec<usize> = (0..n).filter(|&u| p.lt(u, v)).map(|u| rank[u]).collect();
                let mut above: Vec<usize> = (0..n).filter(|&u| p.lt(v, u)).map(|u| rank[u]).collect();
                below.sort_unstable();
                above.sort_unstable();
                let mut key = vec![rank[v], below.len()];
                key.extend(below);
                key.extend(above);
                key
            })
            .collect();
        let next = rank_of(&keys);
        let classes = |r: &[usize]| r.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&rank) {
            break;
        }
        rank = next;
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &r) in rank.iter().enumerate() {
        cells.entry(r).or_default().push(v);
    }
    cells.into_values().collect()
}

/// One representative per isomorphism class of `n`-element posets, each in
/// canonical labeling, sorted by canonical form.
pub fn enumerate_posets(n: usize, connected_only: bool) -> Result<Vec<Poset>, PosetError> {
    enumerate_posets_capped(n, connected_only, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_posets_capped(n: usize, connected_only: bool, cap: usize) -> Result<Vec<Poset>, PosetError> {
    if n > cap {
        return Err(PosetError::CapExceeded { n, cap });
    }
    let all = level(n);
    Ok(all.into_iter().filter(|p| !connected_only || p.is_connected()).collect())
}

/// Number of isomorphism classes for each size `1..=max_n`.
pub fn census(max_n: usize, connected_only: bool) -> Result<Vec<usize>, PosetError> {
    if max_n > DEFAULT_ENUMERATION_CAP {
        return Err(PosetError::CapExceeded { n: max_n, cap: DEFAULT_ENUMERATION_CAP });
    }
    let mut out = Vec::with_capacity(max_n);
    let mut current = vec![Poset::empty(0)];
    for _ in 1..=max_n {
        current = grow(&current);
        out.push(current.iter().filter(|p| !connected_only || p.is_connected()).count());
    }
    Ok(out)
}

fn level(n: usize) -> Vec<Poset> {
    let mut current = vec![Poset::empty(0)];
    for _ in 0..n {
        current = grow(&current);
    }
    current
}

/// Every poset arises from a smaller one by adding a maximal element above a
/// down-closed subset.
fn grow(smaller: &[Poset]) -> Vec<Poset> {
    let found: BTreeMap<CanonicalForm, Poset> = smaller
        .par_iter()
        .flat_map_iter(|p| {
            down_sets(p).into_iter().map(move |below| {
                let m = p.len();
                let mut pairs = p.relations();
                pairs.extend(below.into_iter().map(|u| (u, m)));
                let q = Poset::from_relations(m + 1, &pairs).expect("new element is maximal");
                let (form, order) = canonical(&q);
                (form, order, q)
            })
        })
        .map(|(form, order, q)| (form, q.induced(&order)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    found.into_values().collect()
}

fn down_sets(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    (0u64..1 << n)
        .filter(|&mask| (0..n).all(|v| mask >> v & 1 == 0 || (0..n).all(|u| !p.lt(u, v) || mask >> u & 1 == 1)))
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect()
}
