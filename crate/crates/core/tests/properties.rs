use std::collections::HashMap;

use num_traits::Signed;
use posetform::campaign::{random_unions, run_campaign, Campaign, CampaignOptions};
use posetform::classify::{
    is_stationary, is_utmost_exhaustive, list_i, list_ii, wattle_conditions, wattle_from_first_chain,
    wild_obstructions, zeta_generate,
};
use posetform::cones::{c_cone, hat_cones, stationary_cone};
use posetform::poset::{enumerate_posets, wattle, Poset};
use posetform::quadform::form_of_poset;
use posetform::rational::{frac, int};
use posetform::simplex_min::{faithful_witness, p_value};
use posetform::{Rational, RationalVector};
use proptest::prelude::*;

const CAP: usize = 16;

fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            let perm: Vec<usize> = (0..n).collect();
            (Just(n), proptest::collection::vec(proptest::bool::weighted(0.35), pairs), Just(perm).prop_shuffle())
        })
        .prop_map(|(n, bits, perm)| {
            let mut rel = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        rel.push((perm[i], perm[j]));
                    }
                    k += 1;
                }
            }
            Poset::from_relations(n, &rel).unwrap()
        })
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

fn arb_vec(n: usize) -> impl Strategy<Value = RationalVector> {
    proptest::collection::vec(arb_rational(), n)
}

fn poset_and_vectors() -> impl Strategy<Value = (Poset, RationalVector, RationalVector, Rational)> {
    arb_poset(7).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), arb_vec(n), arb_vec(n), arb_rational())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_and_reduction(p in arb_poset(7)) {
        let again = Poset::from_relations(p.len(), &p.relations()).unwrap();
        prop_assert_eq!(&again, &p);
        let from_arrows = Poset::from_relations(p.len(), &p.quiver().arrows).unwrap();
        prop_assert_eq!(&from_arrows, &p);
        let dual = p.antiisomorph();
        prop_assert_eq!(&dual.antiisomorph(), &p);
        prop_assert_eq!(dual.graph(), p.graph());
        prop_assert_eq!(form_of_poset(&dual), form_of_poset(&p));
    }

    #[test]
    fn canonical_form_ignores_labels(p in arb_poset(6), seed in any::<u64>()) {
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(p.permuted(&perm).canonical_form().key(), p.canonical_form().key());
    }

    #[test]
    fn polarization_identities((p, u, v, eps) in poset_and_vectors()) {
        let f = form_of_poset(&p);
        let du = f.gradient(&u).unwrap();
        let dv = f.gradient(&v).unwrap();
        let dot = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x * y).sum::<Rational>();
        let sum: RationalVector = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        prop_assert_eq!(f.evaluate(&sum).unwrap(), f.evaluate(&u).unwrap() + f.evaluate(&v).unwrap() + dot(&du, &v));
        prop_assert_eq!(dot(&du, &v), dot(&dv, &u));
        let shifted: RationalVector = u.iter().zip(&v).map(|(a, b)| a + &eps * b).collect();
        prop_assert_eq!(
            f.evaluate(&shifted).unwrap(),
            f.evaluate(&u).unwrap() + &eps * &eps * f.evaluate(&v).unwrap() + &eps * dot(&u, &dv)
        );
        prop_assert_eq!(f.evaluate(&u).unwrap(), dot(&u, &du) / int(2));
    }

    #[test]
    fn gradient_monotone((p, u, _v, _e) in poset_and_vectors(), i in 0usize..7, d in 1i64..5) {
        let f = form_of_poset(&p);
        let i = i % p.len();
        let mut w = u.clone();
        w[i] += int(d);
        let before = f.gradient(&u).unwrap();
        let after = f.gradient(&w).unwrap();
        prop_assert!(before.iter().zip(&after).all(|(a, b)| a <= b));
        prop_assert!(&after[i] - &before[i] >= int(2 * d));
    }

    #[test]
    fn witnesses_verify(p in arb_poset(7)) {
        let f = form_of_poset(&p);
        for w in [c_cone(&f), hat_cones(&f), stationary_cone(&f)].into_iter().flatten() {
            prop_assert!(w.verify(&f));
        }
        prop_assert_eq!(c_cone(&f).is_none(), hat_cones(&f).is_none());
        if let Some(w) = faithful_witness(&f) {
            prop_assert!(f.definiteness().is_pd());
            prop_assert!(c_cone(&f).is_none());
            let g = f.gradient(&w.vector).unwrap();
            prop_assert!(g.iter().all(|x| x == &g[0] && x.is_positive()));
        }
    }
}

#[test]
fn p_value_is_monotone_under_restriction() {
    let mut cache: HashMap<String, Rational> = HashMap::new();
    let mut p_of = |q: &Poset| -> Rational {
        let key = q.canonical_form().key();
        cache.entry(key).or_insert_with(|| p_value(q, CAP).unwrap()).clone()
    };
    for n in 1..=6 {
        for p in enumerate_posets(n, false).unwrap() {
            let whole = p_of(&p);
            for mask in 1u32..(1 << n) - 1 {
                let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                assert!(p_of(&p.induced(&idx)) <= whole, "{:?} on {idx:?}", p.relations());
            }
        }
    }
}

#[test]
fn p_value_adds_over_disjoint_unions() {
    let pool: Vec<Poset> = (1..=4).flat_map(|n| enumerate_posets(n, false).unwrap()).collect();
    for u in random_unions(&pool, 100, 11) {
        let comps = u.components();
        let mut split = vec![0usize; u.len()];
        let (first, rest) = comps.split_first().unwrap();
        for &v in first {
            split[v] = 1;
        }
        let a: Vec<usize> = (0..u.len()).filter(|&v| split[v] == 1).collect();
        let b: Vec<usize> = rest.iter().flatten().copied().collect();
        if b.is_empty() {
            continue;
        }
        let sum = p_value(&u.induced(&a), CAP).unwrap() + p_value(&u.induced(&b), CAP).unwrap();
        assert_eq!(p_value(&u, CAP).unwrap(), sum);
    }
}

fn zetas() -> Vec<Rational> {
    let mut out = Vec::new();
    for t in 1..=4i64 {
        for l in t..=12 {
            if num_integer::gcd(l, t) == 1 {
                out.push(frac(l, t));
            }
        }
    }
    out
}

#[test]
fn wattle_stationarity_matches_conditions() {
    let mut wattles: Vec<(Vec<usize>, Poset, RationalVector)> = Vec::new();
    for r in zetas() {
        let z = zeta_generate(&r).unwrap();
        if z.orders.len() >= 2 {
            wattles.push((z.orders.clone(), z.poset.clone(), z.x.clone()));
        }
    }
    for orders in [vec![2, 3, 2], vec![3, 2, 4], vec![2, 2, 2, 2]] {
        let p = wattle(&orders).unwrap();
        let f = form_of_poset(&p);
        if let Some(w) = stationary_cone(&f) {
            wattles.push((orders, p, w.vector));
        }
    }
    assert!(wattles.len() >= 15);
    for (orders, p, x) in wattles {
        let f = form_of_poset(&p);
        assert!(is_stationary(&f, &x) && wattle_conditions(&orders, &x), "{orders:?}");
        let scaled: RationalVector = x.iter().map(|v| v * frac(7, 3)).collect();
        assert!(is_stationary(&f, &scaled) && wattle_conditions(&orders, &scaled));
        for i in 0..x.len() {
            for delta in [frac(1, 7), frac(-1, 11)] {
                let mut y = x.clone();
                y[i] += &delta;
                if !y[i].is_positive() {
                    continue;
                }
                assert_eq!(is_stationary(&f, &y), wattle_conditions(&orders, &y), "{orders:?} at {i}");
            }
        }
    }
}

#[test]
fn wattle_is_fixed_by_its_first_chain() {
    for r in zetas() {
        let z = zeta_generate(&r).unwrap();
        if z.orders.len() < 2 {
            continue;
        }
        let first: RationalVector = z.chains()[0].iter().map(|&v| z.x[v].clone()).collect();
        let (orders, x) = wattle_from_first_chain(&first, 64).unwrap();
        assert_eq!(orders, z.orders, "zeta({r})");
        let flat: RationalVector = z.chains().iter().flatten().map(|&v| z.x[v].clone()).collect();
        assert_eq!(x, flat, "zeta({r})");
    }
}

#[test]
fn critical_lists_are_utmost() {
    for c in list_i().iter().chain(&wild_obstructions()) {
        assert!(is_utmost_exhaustive(&c.poset, CAP).unwrap(), "{}", c.name);
    }
    let six_k = list_ii().pop().unwrap();
    assert!(!is_utmost_exhaustive(&six_k.poset, CAP).unwrap());
}

#[test]
fn campaigns_are_clean_at_six() {
    for c in [
        Campaign::Prop1,
        Campaign::Prop3,
        Campaign::Prop6,
        Campaign::Prop7,
        Campaign::Prop9,
        Campaign::Lemma1,
        Campaign::Lemma7,
        Campaign::Lemma8,
        Campaign::Lemma12,
    ] {
        let r = run_campaign(c, 6, &CampaignOptions::default()).unwrap();
        assert!(r.is_clean(), "{c}: {:?}", r.counterexamples.first());
    }
}

#[test]
fn every_row_reruns_identically() {
    let opts = CampaignOptions::default();
    for c in [Campaign::Theorem, Campaign::Hypothesis, Campaign::Prop2] {
        let r = run_campaign(c, 5, &opts).unwrap();
        for row in &r.rows {
            let again = posetform::campaign::rerun_row(row, &opts).unwrap();
            assert_eq!(&again, row);
        }
    }
}
