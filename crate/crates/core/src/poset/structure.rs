use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{components_of, HasseGraph, Poset, PosetError};

/// Structural facts about a poset and its Hasse quiver/graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub connected: bool,
    #[serde(with = "crate::one_based::nested")]
    pub components: Vec<Vec<usize>>,
    pub cyclic: bool,
    /// A chordless cycle of Γ(S) (a shortest one), when Γ(S) is cyclic.
    #[serde(with = "crate::one_based::opt_vec")]
    pub simple_cycle: Option<Vec<usize>>,
    /// S^×: termini of ≥ 2 arrows or origins of ≥ 2 arrows.
    #[serde(with = "crate::one_based::vec")]
    pub junction_points: Vec<usize>,
    /// Connected components of Γ restricted to S^×.
    #[serde(with = "crate::one_based::nested")]
    pub junction_components: Vec<Vec<usize>>,
    /// ω(S), the size of a largest antichain.
    pub width: usize,
    #[serde(with = "crate::one_based::vec")]
    pub terminal_points: Vec<usize>,
    #[serde(with = "crate::one_based::vec")]
    pub branch_points: Vec<usize>,
    /// I(s_i): the degree of each element in Γ(S).
    pub incidence: Vec<usize>,
}

impl StructureReport {
    pub fn of(p: &Poset) -> Self {
        let (q, g) = p.hasse();
        let n = p.len();
        let adj = g.neighbors();
        let incidence: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for &(a, b) in &q.arrows {
            outdeg[a] += 1;
            indeg[b] += 1;
        }
        let is_junction: Vec<bool> = (0..n).map(|i| indeg[i] >= 2 || outdeg[i] >= 2).collect();
        let junction_points: Vec<usize> = (0..n).filter(|&i| is_junction[i]).collect();
        let junction_components = components_of(n, &adj, |v| is_junction[v]);
        let components = g.components();
        let cyclic = !g.is_acyclic();
        StructureReport {
            connected: components.len() <= 1,
            components,
            cyclic,
            simple_cycle: if cyclic { shortest_cycle(&adj) } else { None },
            junction_points,
            junction_components,
            width: width(p),
            terminal_points: (0..n).filter(|&i| incidence[i] <= 1).collect(),
            branch_points: (0..n).filter(|&i| incidence[i] >= 3).collect(),
            incidence,
        }
    }
}

impl Poset {
    pub fn structure(&self) -> StructureReport {
        StructureReport::of(self)
    }

    pub fn width(&self) -> usize {
        width(self)
    }
}

/// Largest antichain by branch and bound over elements.
fn width(p: &Poset) -> usize {
    fn go(p: &Poset, cand: &[usize], size: usize, best: &mut usize) {
        if size + cand.len() <= *best {
            return;
        }
        let Some((&v, rest)) = cand.split_first() else {
            *best = size;
            return;
        };
        let with: Vec<usize> = rest.iter().copied().filter(|&u| !p.comparable(u, v)).collect();
        go(p, &with, size + 1, best);
        go(p, rest, size, best);
    }
    if p.is_empty() {
        return 0;
    }
    // Try low-comparability elements first: they tend to sit in large antichains.
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&v| p.below_count(v) + p.above_count(v));
    let mut best = 0;
    go(p, &order, 0, &mut best);
    best
}

fn shortest_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w && u < w {
                    let len = dist[u] + dist[w] + 1;
                    if best.as_ref().is_some_and(|b| b.len() <= len) {
                        continue;
                    }
                    let path_to_root = |mut v: usize| {
                        let mut path = vec![v];
                        while v != s {
                            v = parent[v];
                            path.push(v);
                        }
                        path
                    };
                    let pu = path_to_root(u);
                    let pw = path_to_root(w);
                    // The two branches must only meet at the root.
                    if pu.iter().filter(|v| pw.contains(v)).count() != 1 {
                        continue;
                    }
                    let mut cycle: Vec<usize> = pu.into_iter().rev().collect();
                    cycle.extend(pw.into_iter().rev().skip(1).collect::<Vec<_>>().into_iter().rev());
                    best = Some(cycle);
                }
            }
        }
    }
    best
}

/// Shape of a connected Hasse graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GammaClass {
    /// The poset is a chain (Γ = A_n as well).
    Chain(usize),
    /// Γ is the path A_n but the poset is not a chain.
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    /// D̃_n on n + 1 vertices.
    ExtendedD(usize),
    ExtendedE6,
    ExtendedE7,
    ExtendedE8,
    /// A single cycle on the given number of vertices.
    CycleA(usize),
    /// One branch point of degree 3 with arm sizes (centre counted, sorted)
    /// whose reciprocal sum is below 1.
    Star(usize, usize, usize),
    Other,
}

impl GammaClass {
    pub fn is_path(self) -> bool {
        matches!(self, GammaClass::Chain(_) | GammaClass::A(_))
    }

    pub fn is_dynkin(self) -> bool {
        matches!(
            self,
            GammaClass::Chain(_)
                | GammaClass::A(_)
                | GammaClass::D(_)
                | GammaClass::E6
                | GammaClass::E7
                | GammaClass::E8
        )
    }

    pub fn is_extended_dynkin(self) -> bool {
        matches!(
            self,
            GammaClass::ExtendedD(_)
                | GammaClass::ExtendedE6
                | GammaClass::ExtendedE7
                | GammaClass::ExtendedE8
                | GammaClass::CycleA(_)
        )
    }
}

impl fmt::Display for GammaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaClass::Chain(n) => write!(f, "Chain({n})"),
            GammaClass::A(n) => write!(f, "A{n}"),
            GammaClass::D(n) => write!(f, "D{n}"),
            GammaClass::E6 => write!(f, "E6"),
            GammaClass::E7 => write!(f, "E7"),
            GammaClass::E8 => write!(f, "E8"),
            GammaClass::ExtendedD(n) => write!(f, "~D{n}"),
            GammaClass::ExtendedE6 => write!(f, "~E6"),
            GammaClass::ExtendedE7 => write!(f, "~E7"),
            GammaClass::ExtendedE8 => write!(f, "~E8"),
            GammaClass::CycleA(n) => write!(f, "~A{}", n - 1),
            GammaClass::Star(a, b, c) => write!(f, "Star({a},{b},{c})"),
            GammaClass::Other => write!(f, "Other"),
        }
    }
}

/// Classify Γ(P) for a connected poset.
pub fn gamma_class(p: &Poset) -> Result<GammaClass, PosetError> {
    let g = p.graph();
    if !g.is_connected() {
        return Err(PosetError::NotConnected);
    }
    let n = p.len();
    if p.is_chain() {
        return Ok(GammaClass::Chain(n));
    }
    let adj = g.neighbors();
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    if !g.is_acyclic() {
        return Ok(if deg.iter().all(|&d| d == 2) { GammaClass::CycleA(n) } else { GammaClass::Other });
    }
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    match branch.as_slice() {
        [] => Ok(GammaClass::A(n)),
        [c] if deg[*c] == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&w| arm_length(&adj, *c, w) + 1).collect();
            arms.sort_unstable();
            Ok(classify_star(arms[0], arms[1], arms[2]))
        }
        [c] if deg[*c] == 4 && n == 5 => Ok(GammaClass::ExtendedD(4)),
        [a, b] if deg[*a] == 3 && deg[*b] == 3 => {
            let leaves = |v: usize| adj[v].iter().filter(|&&w| deg[w] == 1).count();
            if leaves(*a) == 2 && leaves(*b) == 2 {
                Ok(GammaClass::ExtendedD(n - 1))
            } else {
                Ok(GammaClass::Other)
            }
        }
        _ => Ok(GammaClass::Other),
    }
}

/// Number of vertices along the arm entered from `centre` through `first`.
fn arm_length(adj: &[Vec<usize>], centre: usize, first: usize) -> usize {
    let mut prev = centre;
    let mut cur = first;
    let mut len = 1;
    while adj[cur].len() == 2 {
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
        len += 1;
    }
    len
}

fn classify_star(a: usize, b: usize, c: usize) -> GammaClass {
    // Compare 1/a + 1/b + 1/c with 1 in integers.
    let lhs = b * c + a * c + a * b;
    let rhs = a * b * c;
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => match (a, b, c) {
            (2, 2, _) => GammaClass::D(a + b + c - 2),
            (2, 3, 3) => GammaClass::E6,
            (2, 3, 4) => GammaClass::E7,
            (2, 3, 5) => GammaClass::E8,
            _ => GammaClass::Other,
        },
        std::cmp::Ordering::Equal => match (a, b, c) {
            (3, 3, 3) => GammaClass::ExtendedE6,
            (2, 4, 4) => GammaClass::ExtendedE7,
            (2, 3, 6) => GammaClass::ExtendedE8,
            _ => GammaClass::Other,
        },
        std::cmp::Ordering::Less => GammaClass::Star(a, b, c),
    }
}

/// The standard orientation of an acyclic graph: degree-2 vertices are
/// flow-through, every other vertex is a pure source or a pure sink. Unique
/// up to antiisomorphism on each component; the least vertex of a component
/// is made a source (or, at degree 2, the origin of its first edge).
pub fn standardize(g: &HasseGraph) -> Result<Poset, PosetError> {
    if !g.is_acyclic() {
        return Err(PosetError::CyclicGraph);
    }
    let adj = g.neighbors();
    let mut arrows = Vec::with_capacity(g.edges.len());
    let mut seen = vec![false; g.n];
    for root in 0..g.n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        // (vertex, parent, whether the arrow points into the vertex)
        let mut stack: Vec<(usize, usize, bool)> = Vec::new();
        let deg = adj[root].len();
        for (k, &w) in adj[root].iter().enumerate() {
            let outward = deg != 2 || k == 0;
            arrows.push(if outward { (root, w) } else { (w, root) });
            stack.push((w, root, outward));
        }
        for &w in &adj[root] {
            seen[w] = true;
        }
        while let Some((v, parent, into_v)) = stack.pop() {
            let flow_through = adj[v].len() == 2;
            for &w in &adj[v] {
                if w == parent {
                    continue;
                }
                // Flow-through vertices pass the direction on; sources and
                // sinks repeat it.
                let out_of_v = if flow_through { into_v } else { !into_v };
                arrows.push(if out_of_v { (v, w) } else { (w, v) });
                seen[w] = true;
                stack.push((w, v, out_of_v));
            }
        }
    }
    Poset::from_relations(g.n, &arrows)
}
