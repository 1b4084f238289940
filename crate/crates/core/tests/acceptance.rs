//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{Signed, ToPrimitive, Zero};
use posetform::campaign::{self, Campaign, CampaignOptions};
use posetform::classify::{critical_lists, zeta_generate, RepType};
use posetform::cones::{c_cone, c_tilde, closed_form_dynkin, dynkin_to_c, stationary_cone, Cone, ConeWitness};
use posetform::lp::{lp, LpProblem, LpStatus};
use posetform::poset::{
    antichain, census, chain, crown, dynkin_d, dynkin_e, enumerate_posets, example2, example4, extended_d, extended_e,
    kleiner_k, primitive, wattle, Poset,
};
use posetform::quadform::{form_of_poset, QuadraticForm};
use posetform::rational::{frac, int, vec_of};
use posetform::simplex_min::{faithful_witness, minimize_on_simplex, p_of_r, p_value, p_value_by_components, rho};
use posetform::{Rational, RationalVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::vertices;

const CAP: usize = 16;

fn example_fidelity() -> Result<(), String> {
    let start = Instant::now();

    let f = form_of_poset(&example2());
    let d = vec_of(&[-2, 1, 1, 1, 1]);
    ensure(f.gradient(&d).unwrap().iter().all(Zero::is_zero), "Dynkin vector gradient is not zero")?;
    for v in [[-2, 1, 1, 1, -1], [-2, 1, 1, -1, 1], [-2, 1, -1, 1, 1], [-2, -1, 1, 1, 1], [-4, 1, 1, 1, 1]] {
        let v = vec_of(&v);
        let in_c = [Cone::Cminus, Cone::Cplus].into_iter().any(|c| ConeWitness::new(&f, c, v.clone()).verify(&f));
        ensure(in_c, &format!("{v:?} is not in C"))?;
    }

    let crown = crown(2).unwrap();
    let f = form_of_poset(&crown);
    ensure(f.det().is_zero(), "crown determinant is not zero")?;
    let g = f.gradient(&vec_of(&[1, 1, 1, 1])).unwrap();
    ensure(g.iter().all(|x| x == &g[0] && x.is_positive()), "(1,1,1,1) is not stationary")?;
    let c = vec_of(&[1, 1, -1, -1]);
    let in_c = [Cone::Cminus, Cone::Cplus].into_iter().any(|k| ConeWitness::new(&f, k, c.clone()).verify(&f));
    ensure(in_c, "(1,1,-1,-1) is not in C")?;

    let p = example4();
    let f = form_of_poset(&p);
    let st = vec_of(&[1, 2, 1, 1, 2, 1]);
    ensure(f.gradient(&st).unwrap() == vec![int(6); 6], "St vector has the wrong gradient")?;
    let w = stationary_cone(&f).ok_or("St is empty")?;
    let scale = &st[0] / &w.vector[0];
    ensure(w.vector.iter().map(|x| x * &scale).collect::<Vec<_>>() == st, "St ray differs")?;
    ensure(f.evaluate(&vec_of(&[1, 1, 1, -1, -1, -1])).unwrap() == int(-2), "f(1,1,1,-1,-1,-1) != -2")?;
    ensure(f.det_doubled() == int(-48), "det 2A != -48")?;
    ensure(c_cone(&f).is_none() && c_tilde(&f).is_none(), "C is not empty")?;
    ensure(faithful_witness(&f).is_none(), "faithful vector found")?;

    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), &format!("took {took:?}"))
}

fn p_values() -> Result<(), String> {
    let p_k = p_value(&kleiner_k(), CAP).map_err(|e| e.to_string())?;
    ensure(p_k == frac(12, 5) && p_k == p_of_r(&frac(3, 2)).unwrap(), "P(K) != 12/5")?;

    let by_formula = |orders: &[usize], with_k: bool| -> Rational {
        let mut total: Rational = orders.iter().map(|&n| rho(&int(n as i64)).unwrap()).sum();
        if with_k {
            total += p_of_r(&frac(3, 2)).unwrap();
        }
        total
    };
    let formulas_i = [
        by_formula(&[1, 1, 1, 1], false),
        by_formula(&[2, 2, 2], false),
        by_formula(&[1, 3, 3], false),
        by_formula(&[1, 2, 5], false),
        by_formula(&[4], true),
    ];
    let formulas_ii = [
        by_formula(&[1, 1, 1, 1, 1], false),
        by_formula(&[1, 1, 1, 2], false),
        by_formula(&[2, 2, 3], false),
        by_formula(&[1, 3, 4], false),
        by_formula(&[1, 2, 6], false),
        by_formula(&[6], true),
    ];
    let expected_ii = [int(5), frac(13, 3), frac(25, 6), frac(41, 10), frac(85, 21), frac(144, 35)];
    let (one, two) = critical_lists();
    for (c, formula) in one.iter().zip(&formulas_i) {
        let direct = p_value(&c.poset, CAP).map_err(|e| e.to_string())?;
        let split = p_value_by_components(&c.poset, CAP).map_err(|e| e.to_string())?;
        ensure(direct == int(4) && &split == formula && formula == &int(4), &format!("{} has P = {direct}", c.name))?;
    }
    for ((c, formula), want) in two.iter().zip(&formulas_ii).zip(&expected_ii) {
        let direct = p_value(&c.poset, CAP).map_err(|e| e.to_string())?;
        let split = p_value_by_components(&c.poset, CAP).map_err(|e| e.to_string())?;
        ensure(&direct == want && &split == want && formula == want, &format!("{} has P = {direct}", c.name))?;
        ensure(RepType::from_p(&direct) == RepType::Wild, "list II member is not wild")?;
    }

    let big = zeta_generate(&frac(7, 2)).unwrap().poset.disjoint_union(&chain(17));
    let direct = p_value(&big, CAP).map_err(|e| e.to_string())?;
    ensure(
        direct == int(5) && p_of_r(&frac(7, 2)).unwrap() + rho(&int(17)).unwrap() == int(5),
        "P(zeta(7/2)+(17)) != 5",
    )?;

    for (m, want) in [(4, int(4)), (5, frac(61, 15))] {
        let p = kleiner_k().disjoint_union(&chain(m));
        let direct = p_value(&p, CAP).map_err(|e| e.to_string())?;
        let formula = p_of_r(&frac(3, 2)).unwrap() + rho(&int(m as i64)).unwrap();
        ensure(direct == want && formula == want, &format!("P(K+Z{m}) = {direct}"))?;
    }
    Ok(())
}

fn run(c: Campaign, n_max: usize) -> Result<campaign::CampaignResult, String> {
    let r = campaign::run_campaign(c, n_max, &CampaignOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.census[..] == campaign::KNOWN_CENSUS[..n_max], &format!("{c}: census {:?}", r.census))?;
    Ok(r)
}

fn clean(c: Campaign, n_max: usize) -> Result<(), String> {
    let r = run(c, n_max)?;
    ensure(r.checked > 0, &format!("{c}: nothing checked"))?;
    ensure(
        r.is_clean(),
        &format!("{c}: {} counterexamples, first {:?}", r.counterexamples.len(), r.counterexamples.first()),
    )
}

fn theorem() -> Result<(), String> {
    ensure(census(6, false).unwrap() == campaign::KNOWN_CENSUS[..6], "census mismatch")?;
    let start = Instant::now();
    clean(Campaign::Theorem, 6)?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(600), &format!("took {took:?}"))
}

fn propositions_and_lemmas() -> Result<(), String> {
    use Campaign::*;
    for c in [Prop1, Prop3, Prop6, Prop7, Lemma1, Lemma2, Lemma7, Lemma8, Lemma12] {
        clean(c, 5)?;
    }
    clean(Prop2, 6)
}

fn dynkin() -> Result<(), String> {
    let mut cases: Vec<(String, Poset, bool)> = Vec::new();
    for n in 4..=8 {
        cases.push((format!("D{n}"), dynkin_d(n).unwrap(), false));
        cases.push((format!("~D{n}"), extended_d(n).unwrap(), true));
    }
    for n in 6..=8 {
        cases.push((format!("E{n}"), dynkin_e(n).unwrap(), false));
        cases.push((format!("~E{n}"), extended_e(n).unwrap(), true));
    }
    for (name, p, extended) in cases {
        let f = form_of_poset(&p);
        let d = closed_form_dynkin(&p).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.verify(&f), &format!("{name}: Dynkin conditions fail"))?;
        if extended {
            ensure(f.gradient(&d.vector).unwrap().iter().all(Zero::is_zero), &format!("{name}: gradient is not 0"))?;
        }
        let c = dynkin_to_c(&f, &d).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.verify(&f) && c.is_c(), &format!("{name}: C witness fails"))?;
    }
    Ok(())
}

fn identities() -> Result<(), String> {
    let r = run(Campaign::Identities, 5)?;
    ensure(r.checked >= 50, &format!("only {} posets", r.checked))?;
    ensure(CampaignOptions::default().identity_pairs >= 200, "fewer than 200 pairs")?;
    ensure(r.is_clean(), &format!("{:?}", r.counterexamples.first()))
}

fn oracle_forms() -> Vec<Poset> {
    let mut forms = enumerate_posets(5, true).unwrap();
    forms.extend([
        example4(),
        crown(3).unwrap(),
        crown(4).unwrap(),
        wattle(&[2, 3, 2]).unwrap(),
        dynkin_d(8).unwrap(),
        extended_e(6).unwrap(),
        primitive(&[2, 3, 3]),
        antichain(8),
        chain(8),
    ]);
    forms
}

/// `f(x) ≥ min` for integer points `w` scaled onto the simplex, checked exactly
/// as `q · w(2A)w ≥ 2p · s²` where `min = p/q` and `s = Σw`.
fn simplex_oracle(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for p in oracle_forms() {
        let f = form_of_poset(&p);
        let n = f.n();
        let m = minimize_on_simplex(&f, CAP).map_err(|e| e.to_string())?;
        ensure(m.minimizer.iter().all(|x| !x.is_negative()), "minimizer leaves the simplex")?;
        ensure(f.evaluate(&m.minimizer).unwrap() == m.value, "minimizer value mismatch")?;
        let a2: Vec<Vec<i128>> = f
            .doubled()
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|x| x.to_integer().to_i128().unwrap()).collect())
            .collect();
        let num = m.value.numer().to_i128().unwrap();
        let den = m.value.denom().to_i128().unwrap();
        for _ in 0..10_000 {
            let mut w: Vec<i128> = (0..n).map(|_| rng.gen_range(0..1000)).collect();
            if rng.gen_bool(0.3) {
                for x in w.iter_mut() {
                    if rng.gen_bool(0.5) {
                        *x = 0;
                    }
                }
            }
            let s: i128 = w.iter().sum();
            if s == 0 {
                continue;
            }
            let quad: i128 = (0..n).map(|i| (0..n).map(|j| w[i] * a2[i][j] * w[j]).sum::<i128>()).sum();
            ensure(den * quad >= 2 * num * s * s, &format!("point below the minimum for {:?}", p.relations()))?;
        }
    }
    Ok(())
}

fn lp_oracle(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (mut feasible, mut infeasible) = (0, 0);
    for case in 0..100 {
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(2..=4);
        let rows: Vec<(RationalVector, Rational)> = (0..m)
            .map(|_| ((0..n).map(|_| int(rng.gen_range(-3..=3))).collect(), int(rng.gen_range(-4..=4))))
            .collect();
        let objective: RationalVector = (0..n).map(|_| int(rng.gen_range(0..=3))).collect();
        let mut problem = LpProblem::new(n).nonnegative().minimize(objective.clone());
        for (a, b) in &rows {
            problem = problem.le(a.clone(), b.clone());
        }
        let result = lp(&problem);
        let verts = vertices(&rows, n);
        match result.status {
            LpStatus::Infeasible => {
                infeasible += 1;
                ensure(verts.is_empty(), &format!("case {case}: LP infeasible but a vertex exists"))?;
            }
            status => {
                feasible += 1;
                ensure(!verts.is_empty(), &format!("case {case}: LP feasible but no vertex"))?;
                ensure(problem.is_feasible_point(result.point.as_ref().unwrap()), "LP point is infeasible")?;
                ensure(status == LpStatus::Optimal, &format!("case {case}: nonnegative objective reported unbounded"))?;
                let best =
                    verts.iter().map(|x| x.iter().zip(&objective).map(|(u, v)| u * v).sum::<Rational>()).min().unwrap();
                ensure(result.value.as_ref() == Some(&best), &format!("case {case}: optimum differs"))?;
            }
        }
    }
    ensure(feasible > 10 && infeasible > 10, &format!("unbalanced sample {feasible}/{infeasible}"))
}

fn oracles() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    simplex_oracle(&mut rng)?;
    lp_oracle(&mut rng)
}

fn zeta() -> Result<(), String> {
    for t in 1..=4i64 {
        for l in 1..=12i64 {
            if l < t || num_integer::gcd(l, t) != 1 {
                continue;
            }
            let r = frac(l, t);
            let z = zeta_generate(&r).map_err(|e| e.to_string())?;
            z.check().map_err(|e| format!("zeta({r}): {e}"))?;
            let p = p_value(&z.poset, CAP).map_err(|e| e.to_string())?;
            let want = frac(2 * l * t, l + t);
            ensure(p == want && p_of_r(&r).unwrap() == want, &format!("P(zeta({r})) = {p}"))?;
        }
    }
    Ok(())
}

fn hypothesis() -> Result<(), String> {
    let r = run(Campaign::Hypothesis, 6)?;
    let trees = enumerate_posets(6, true)
        .unwrap()
        .into_iter()
        .chain((1..6).flat_map(|n| enumerate_posets(n, true).unwrap()))
        .filter(|p| {
            let g = p.graph();
            g.is_acyclic() && !g.is_path()
        })
        .count();
    ensure(r.passed == trees, &format!("{} witnesses for {trees} posets", r.passed))?;
    if !r.counterexamples.is_empty() {
        println!("  finding: {} posets without a C witness", r.counterexamples.len());
    }
    for row in r.rows.iter().filter(|row| row.verdict == campaign::Verdict::Pass) {
        let p = row.poset().map_err(|e| e.to_string())?;
        let f: QuadraticForm = form_of_poset(&p);
        let w = c_cone(&f).ok_or("witness not reproducible")?;
        ensure(w.verify(&f), "witness does not verify")?;
    }
    Ok(())
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

type Check = fn() -> Result<(), String>;

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("worked examples", example_fidelity),
        ("exact P-values", p_values),
        ("theorem by enumeration, n <= 6", theorem),
        ("propositions and lemmas by enumeration", propositions_and_lemmas),
        ("Dynkin constructions", dynkin),
        ("identity suite", identities),
        ("simplex and LP oracles", oracles),
        ("zeta(r) generator", zeta),
        ("hypothesis campaign, n <= 6", hypothesis),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {} {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                println!("FAIL {} {name} ({secs:.2}s): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
