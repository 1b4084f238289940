//! Named poset families.

use super::{Poset, PosetError};

pub fn chain(n: usize) -> Poset {
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_relations(n, &pairs).expect("chain is acyclic")
}

pub fn antichain(n: usize) -> Poset {
    Poset::empty(n)
}

/// `(n_1, …, n_p)`: disjoint union of chains.
pub fn primitive(orders: &[usize]) -> Poset {
    orders.iter().fold(Poset::empty(0), |acc, &k| acc.disjoint_union(&chain(k)))
}

/// Crown `W^{2k}`: `s_i^- < s_i^+` and `s_i^- < s_{i+1}^+` with indices mod k.
/// Minus points are `0..k`, plus points `k..2k`.
pub fn crown(k: usize) -> Result<Poset, PosetError> {
    if k < 2 {
        return Err(PosetError::BadParams(format!("crown needs k >= 2, got {k}")));
    }
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| [(i, k + i), (i, k + (i + 1) % k)]).collect();
    Poset::from_relations(2 * k, &pairs)
}

/// Fence `W^{a,b}` with `a` minus points followed by `b` plus points,
/// `|a - b| = 1`.
///
/// `W^{k,k+1}`: `s_i^- < s_i^+`, `s_i^- < s_{i+1}^+`.
/// `W^{k+1,k}`: `s_i^- < s_i^+`, `s_{i+1}^- < s_i^+`.
pub fn fence(minus: usize, plus: usize) -> Result<Poset, PosetError> {
    if minus == 0 || plus == 0 || minus.abs_diff(plus) != 1 {
        return Err(PosetError::BadParams(format!("fence needs |a-b| = 1 with a, b >= 1, got ({minus}, {plus})")));
    }
    let n = minus + plus;
    let pairs: Vec<(usize, usize)> = if plus > minus {
        (0..minus).flat_map(|i| [(i, minus + i), (i, minus + i + 1)]).collect()
    } else {
        (0..plus).flat_map(|i| [(i, minus + i), (i + 1, minus + i)]).collect()
    };
    Poset::from_relations(n, &pairs)
}

/// `V = {h⁻ < h₁ < h⁺, h⁻ < h₂ < h⁺}` as `(h⁻, h₁, h₂, h⁺)`.
pub fn v_poset() -> Poset {
    Poset::from_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("V is a poset")
}

/// Wattle `⟨n_1, …, n_t⟩`: chains listed one after another, each from its
/// minimum up, with `min Z_i < max Z_{i+1}` as the only cross relations.
pub fn wattle(orders: &[usize]) -> Result<Poset, PosetError> {
    match orders {
        [] => Err(PosetError::BadParams("wattle needs at least one chain".into())),
        [k] => Ok(chain(*k)),
        _ => {
            if let Some(bad) = orders.iter().find(|&&k| k < 2) {
                return Err(PosetError::BadParams(format!("wattle chains must have order >= 2, got {bad}")));
            }
            let mut starts = Vec::with_capacity(orders.len());
            let mut pairs = Vec::new();
            let mut offset = 0;
            for &k in orders {
                starts.push(offset);
                pairs.extend((offset + 1..offset + k).map(|i| (i - 1, i)));
                offset += k;
            }
            for i in 0..orders.len() - 1 {
                let min_i = starts[i];
                let max_next = starts[i + 1] + orders[i + 1] - 1;
                pairs.push((min_i, max_next));
            }
            Poset::from_relations(offset, &pairs)
        }
    }
}

/// Element indices of the chains of `wattle(orders)`.
pub fn wattle_chains(orders: &[usize]) -> Vec<Vec<usize>> {
    let mut offset = 0;
    orders
        .iter()
        .map(|&k| {
            let c = (offset..offset + k).collect();
            offset += k;
            c
        })
        .collect()
}

/// Standard star: arms of the given sizes (each counting the shared centre)
/// meet at element 0, which is the source of every arm. Arm vertices follow
/// arm by arm, from the centre outward.
pub fn standard_star(arms: &[usize]) -> Result<Poset, PosetError> {
    if arms.is_empty() || arms.iter().any(|&a| a < 2) {
        return Err(PosetError::BadParams(format!("star arms must be >= 2, got {arms:?}")));
    }
    let n = 1 + arms.iter().map(|a| a - 1).sum::<usize>();
    let mut pairs = Vec::new();
    let mut next = 1;
    for &a in arms {
        let mut prev = 0;
        for _ in 1..a {
            pairs.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Poset::from_relations(n, &pairs)
}

/// Element indices of each arm of `standard_star(arms)`, centre excluded,
/// from the centre outward.
pub fn star_arms(arms: &[usize]) -> Vec<Vec<usize>> {
    let mut next = 1;
    arms.iter()
        .map(|&a| {
            let v = (next..next + a - 1).collect();
            next += a - 1;
            v
        })
        .collect()
}

/// Standard `D_n` (n ≥ 4): centre `s_1`, fork ends `s_2, s_3`, long arm
/// `s_4 … s_n`; the centre is the source of all its arrows.
pub fn dynkin_d(n: usize) -> Result<Poset, PosetError> {
    if n < 4 {
        return Err(PosetError::BadParams(format!("D_n needs n >= 4, got {n}")));
    }
    standard_star(&[2, 2, n - 2])
}

/// Standard `E_6`, `E_7`, `E_8` with arm sizes `(3,3,2)`, `(2,4,3)`,
/// `(2,3,5)`; the third arm is the one that extends to `Ẽ_n`.
pub fn dynkin_e(n: usize) -> Result<Poset, PosetError> {
    standard_star(&e_arms(n)?)
}

pub fn e_arms(n: usize) -> Result<[usize; 3], PosetError> {
    match n {
        6 => Ok([3, 3, 2]),
        7 => Ok([2, 4, 3]),
        8 => Ok([2, 3, 5]),
        _ => Err(PosetError::BadParams(format!("E_n needs n in 6..=8, got {n}"))),
    }
}

/// Standard `Ẽ_6`, `Ẽ_7`, `Ẽ_8`: arms `(3,3,3)`, `(2,4,4)`, `(2,3,6)`.
pub fn extended_e(n: usize) -> Result<Poset, PosetError> {
    let mut arms = e_arms(n)?;
    arms[2] += 1;
    standard_star(&arms)
}

/// Standard `D̃_n` on `n + 1` points (n ≥ 4). For n = 4 this is the star
/// with four arms of length one. Otherwise: `b₁ = 0` is a source with leaves
/// 1, 2; a directed path runs from `b₁` to the sink `b₂ = n − 2`, whose
/// leaves `n − 1`, `n` lie below it.
pub fn extended_d(n: usize) -> Result<Poset, PosetError> {
    if n < 4 {
        return Err(PosetError::BadParams(format!("D̃_n needs n >= 4, got {n}")));
    }
    if n == 4 {
        return standard_star(&[2, 2, 2, 2]);
    }
    let b2 = n - 2;
    let mut pairs = vec![(0, 1), (0, 2)];
    let mut prev = 0;
    for v in 3..b2 {
        pairs.push((prev, v));
        prev = v;
    }
    pairs.push((prev, b2));
    pairs.push((n - 1, b2));
    pairs.push((n, b2));
    Poset::from_relations(n + 1, &pairs)
}

/// The poset of the worked example with four arrows out of one minimum:
/// `s_1 < s_i`, i = 2..5.
pub fn example2() -> Poset {
    standard_star(&[2, 2, 2, 2]).expect("valid star")
}

/// Six-point poset `a₁,a₂,a₃ < b₁,b₂,b₃` with the single pair `a₂, b₂` left
/// incomparable. Its form is indefinite yet admits a positive stationary
/// vector `(1,2,1,1,2,1)`.
pub fn example4() -> Poset {
    let pairs: Vec<(usize, usize)> =
        (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).filter(|&(a, b)| !(a == 1 && b == 4)).collect();
    Poset::from_relations(6, &pairs)
        .expect("bipartite order")
        .with_labels(["a1", "a2", "a3", "b1", "b2", "b3"].map(String::from).to_vec())
}

/// `K = ⟨2, 2⟩`.
pub fn kleiner_k() -> Poset {
    wattle(&[2, 2]).expect("valid wattle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crown_two_is_complete_bipartite() {
        let w = crown(2).unwrap();
        for m in 0..2 {
            for p in 2..4 {
                assert!(w.lt(m, p));
            }
        }
        assert!(!w.comparable(0, 1) && !w.comparable(2, 3));
        assert!(crown(1).is_err());
    }

    #[test]
    fn crown_graph_is_cycle() {
        for k in 2..6 {
            let g = crown(k).unwrap().graph();
            assert_eq!(g.edges.len(), 2 * k);
            assert!(g.degrees().iter().all(|&d| d == 2));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn fence_two_three_is_path() {
        let f = fence(2, 3).unwrap();
        assert_eq!(f.len(), 5);
        assert!(f.graph().is_path());
        let g = fence(3, 2).unwrap();
        assert!(g.graph().is_path());
        assert_eq!(g.antiisomorph().graph().edges.len(), 4);
        assert!(fence(2, 2).is_err());
    }

    #[test]
    fn wattle_two_two_is_k() {
        let k = wattle(&[2, 2]).unwrap();
        assert_eq!(k.relations(), vec![(0, 1), (0, 3), (2, 3)]);
        assert!(wattle(&[2, 1]).is_err());
        assert_eq!(wattle(&[4]).unwrap(), chain(4));
    }

    #[test]
    fn star_layout() {
        let e8 = dynkin_e(8).unwrap();
        assert_eq!(e8.len(), 8);
        assert_eq!(star_arms(&[2, 3, 5]), vec![vec![1], vec![2, 3], vec![4, 5, 6, 7]]);
        assert!(e8.lt(0, 7) && e8.lt(4, 7) && !e8.comparable(1, 2));
        assert_eq!(extended_e(8).unwrap().len(), 9);
    }

    #[test]
    fn extended_d_shapes() {
        for n in 4..=8 {
            let p = extended_d(n).unwrap();
            assert_eq!(p.len(), n + 1);
            let g = p.graph();
            assert!(g.is_connected() && g.is_acyclic());
            let branch = g.degrees().iter().filter(|&&d| d >= 3).count();
            assert_eq!(branch, if n == 4 { 1 } else { 2 });
        }
    }

    #[test]
    fn example4_has_eight_relations() {
        let p = example4();
        assert_eq!(p.relations().len(), 8);
        assert!(!p.comparable(1, 4));
    }
}
