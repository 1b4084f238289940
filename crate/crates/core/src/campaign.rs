//! Exhaustive verification campaigns over enumerated posets.
//!
//! Each campaign checks one statement on every poset of a size range and
//! produces one row per poset. Rows carry the Hasse arrows of their poset so
//! any row can be re-checked on its own.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{self, is_utmost, junction_parity_even, recognize, wattle_orders};
use crate::cones::{
    c_cone, c_tilde, dynkin_to_c, dynkin_vector, hat_cones, hat_to_c, nonsingular_dichotomy, stationary_cone, Cone,
    Dichotomy, DEFAULT_DYNKIN_BOX,
};
use crate::poset::{crown, enumerate_posets, is_isomorphic, v_poset, Poset, PosetError, DEFAULT_ENUMERATION_CAP};
use crate::quadform::{tits_form, DefinitenessKind, QuadraticForm};
use crate::rational::{self, Rational, RationalVector};
use crate::simplex_min::{faithful_witness, minimize_on_simplex, DEFAULT_SIMPLEX_CAP};

/// Numbers of unlabeled posets on 1..=7 elements.
pub const KNOWN_CENSUS: [usize; 7] = [1, 2, 5, 16, 63, 318, 2045];
/// Numbers of connected unlabeled posets on 1..=7 elements.
pub const KNOWN_CONNECTED_CENSUS: [usize; 7] = [1, 1, 3, 10, 44, 238, 1650];

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("census mismatch at n = {n}: expected {expected}, enumerated {found}")]
    Census { n: usize, expected: usize, found: usize },
    #[error("unknown campaign {0:?}")]
    UnknownCampaign(String),
    #[error("campaign output: {0}")]
    Io(#[from] std::io::Error),
    #[error("campaign output line {line}: {message}")]
    BadRow { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Campaign {
    Theorem,
    Prop1,
    Prop2,
    Prop3,
    Prop6,
    Prop7,
    Prop9,
    Lemma1,
    Lemma2,
    Lemma7,
    Lemma8,
    Lemma12,
    Identities,
    Hypothesis,
}

impl Campaign {
    pub const ALL: [Campaign; 14] = [
        Campaign::Theorem,
        Campaign::Prop1,
        Campaign::Prop2,
        Campaign::Prop3,
        Campaign::Prop6,
        Campaign::Prop7,
        Campaign::Prop9,
        Campaign::Lemma1,
        Campaign::Lemma2,
        Campaign::Lemma7,
        Campaign::Lemma8,
        Campaign::Lemma12,
        Campaign::Identities,
        Campaign::Hypothesis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::Theorem => "theorem",
            Campaign::Prop1 => "prop1",
            Campaign::Prop2 => "prop2",
            Campaign::Prop3 => "prop3",
            Campaign::Prop6 => "prop6",
            Campaign::Prop7 => "prop7",
            Campaign::Prop9 => "prop9",
            Campaign::Lemma1 => "lemma1",
            Campaign::Lemma2 => "lemma2",
            Campaign::Lemma7 => "lemma7",
            Campaign::Lemma8 => "lemma8",
            Campaign::Lemma12 => "lemma12",
            Campaign::Identities => "identities",
            Campaign::Hypothesis => "hypothesis",
        }
    }

    /// What a passing row establishes.
    pub fn statement(self) -> &'static str {
        match self {
            Campaign::Theorem => "connected, PSD form: C(S) empty iff S is an r-set",
            Campaign::Prop1 => "St(f) and C~(f) are never both nonempty",
            Campaign::Prop2 => "det A != 0: exactly one of St(f), C(f) is nonempty",
            Campaign::Prop3 => {
                "P-faithful iff PD with St(f) nonempty; faithful vectors lie in St+ and give antimonotonicity"
            }
            Campaign::Prop6 => "connected, PSD, antimonotonous: Gamma(S) is a path",
            Campaign::Prop7 => "connected, PSD, antimonotonous: S is a chain or a wattle",
            Campaign::Prop9 => "P-faithful S is utmost iff S is in list I or list II",
            Campaign::Lemma1 => "C(f) empty iff the relaxed cones are empty",
            Campaign::Lemma2 => "a disjoint union is antimonotonous iff every component is",
            Campaign::Lemma7 => "Dynkin terminal points survive every arrow reversal",
            Campaign::Lemma8 => "minimal cyclic posets are V or crowns",
            Campaign::Lemma12 => "Gamma(S) a path: chain or wattle iff junction components are even",
            Campaign::Identities => "polarization identities, monotonicity of the gradient, duality, definiteness scan",
            Campaign::Hypothesis => "connected, Gamma(S) acyclic and not a path: C(S) nonempty",
        }
    }

    /// Default size limit for `verify` runs.
    pub fn default_n_max(self) -> usize {
        match self {
            Campaign::Theorem | Campaign::Prop2 | Campaign::Hypothesis => 6,
            _ => 5,
        }
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Campaign {
    type Err = CampaignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CampaignError::UnknownCampaign(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Skip,
    Counterexample,
}

/// One checked poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignRow {
    pub campaign: Campaign,
    /// Canonical form key of the poset.
    pub key: String,
    pub n: usize,
    /// Hasse arrows `(lower, upper)`, 1-based.
    #[serde(with = "crate::one_based::pairs")]
    pub arrows: Vec<(usize, usize)>,
    pub verdict: Verdict,
    pub note: String,
    #[serde(default, with = "rational::serde_str::opt_vec", skip_serializing_if = "Option::is_none")]
    pub witness: Option<RationalVector>,
}

impl CampaignRow {
    pub fn poset(&self) -> Result<Poset, PosetError> {
        Poset::from_relations(self.n, &self.arrows)
    }
}

#[derive(Debug, Clone)]
pub struct CampaignOptions {
    pub box_bound: i64,
    pub simplex_cap: usize,
    /// Random vector pairs per poset in the identity campaign.
    pub identity_pairs: usize,
    /// Random pairs of posets in the disjoint-union campaign.
    pub union_pairs: usize,
    pub seed: u64,
    /// Canonical keys already processed.
    pub skip: BTreeSet<String>,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        Self {
            box_bound: DEFAULT_DYNKIN_BOX,
            simplex_cap: DEFAULT_SIMPLEX_CAP,
            identity_pairs: 200,
            union_pairs: 100,
            seed: 0x5eed,
            skip: BTreeSet::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignResult {
    pub campaign: Campaign,
    pub statement: String,
    pub n_max: usize,
    pub census: Vec<usize>,
    pub connected_census: Vec<usize>,
    pub checked: usize,
    pub passed: usize,
    pub skipped: usize,
    pub resumed: usize,
    pub counterexamples: Vec<CampaignRow>,
    #[serde(skip)]
    pub rows: Vec<CampaignRow>,
}

impl CampaignResult {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// All posets, then counts per size, then connected counts per size.
pub type CensusRun = (Vec<Poset>, Vec<usize>, Vec<usize>);

/// Every poset with `1..=n_max` elements, after checking the counts against
/// the known census.
pub fn census_checked_posets(n_max: usize) -> Result<CensusRun, CampaignError> {
    if n_max > DEFAULT_ENUMERATION_CAP {
        return Err(PosetError::CapExceeded { n: n_max, cap: DEFAULT_ENUMERATION_CAP }.into());
    }
    let mut all = Vec::new();
    let mut census = Vec::new();
    let mut connected = Vec::new();
    for n in 1..=n_max {
        let level = enumerate_posets(n, false)?;
        let c = level.iter().filter(|p| p.is_connected()).count();
        for (found, expected) in [(level.len(), KNOWN_CENSUS[n - 1]), (c, KNOWN_CONNECTED_CENSUS[n - 1])] {
            if found != expected {
                return Err(CampaignError::Census { n, expected, found });
            }
        }
        census.push(level.len());
        connected.push(c);
        all.extend(level);
    }
    Ok((all, census, connected))
}

/// Disjoint unions of random pairs drawn from `posets`.
pub fn random_unions(posets: &[Poset], count: usize, seed: u64) -> Vec<Poset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .filter_map(|_| {
            let a = posets.choose(&mut rng)?;
            let b = posets.choose(&mut rng)?;
            Some(a.disjoint_union(b))
        })
        .collect()
}

pub fn run_campaign(campaign: Campaign, n_max: usize, opts: &CampaignOptions) -> Result<CampaignResult, CampaignError> {
    let (posets, census, connected_census) = census_checked_posets(n_max)?;
    let subjects = match campaign {
        Campaign::Lemma2 => random_unions(&posets, opts.union_pairs, opts.seed),
        _ => posets,
    };
    run_on(campaign, &subjects, n_max, census, connected_census, opts)
}

/// Run a campaign on an explicit list of posets.
pub fn run_on(
    campaign: Campaign,
    subjects: &[Poset],
    n_max: usize,
    census: Vec<usize>,
    connected_census: Vec<usize>,
    opts: &CampaignOptions,
) -> Result<CampaignResult, CampaignError> {
    let keyed: Vec<(String, &Poset)> = subjects.iter().map(|p| (p.canonical_form().key(), p)).collect();
    let mut seen = BTreeSet::new();
    let todo: Vec<(String, &Poset)> = keyed.into_iter().filter(|(k, _)| seen.insert(k.clone())).collect();
    let fresh: Vec<&(String, &Poset)> = todo.iter().filter(|(k, _)| !opts.skip.contains(k)).collect();
    let resumed = todo.len() - fresh.len();
    let mut rows: Vec<CampaignRow> = fresh
        .par_iter()
        .map(|(key, p)| {
            let outcome = check(campaign, p, key, opts);
            CampaignRow {
                campaign,
                key: key.clone(),
                n: p.len(),
                arrows: p.quiver().arrows,
                verdict: outcome.verdict,
                note: outcome.note,
                witness: outcome.witness,
            }
        })
        .collect();
    rows.sort_by(|a, b| (a.n, &a.key).cmp(&(b.n, &b.key)));
    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == v).count();
    Ok(CampaignResult {
        campaign,
        statement: campaign.statement().to_string(),
        n_max,
        census,
        connected_census,
        checked: rows.len(),
        passed: count(Verdict::Pass),
        skipped: count(Verdict::Skip),
        resumed,
        counterexamples: rows.iter().filter(|r| r.verdict == Verdict::Counterexample).cloned().collect(),
        rows,
    })
}

/// Re-check a row from its reproduction data alone.
pub fn rerun_row(row: &CampaignRow, opts: &CampaignOptions) -> Result<CampaignRow, CampaignError> {
    let p = row.poset()?;
    let key = p.canonical_form().key();
    let outcome = check(row.campaign, &p, &key, opts);
    Ok(CampaignRow { key, verdict: outcome.verdict, note: outcome.note, witness: outcome.witness, ..row.clone() })
}

pub fn write_jsonl<W: Write>(rows: &[CampaignRow], mut w: W) -> Result<(), CampaignError> {
    for row in rows {
        serde_json::to_writer(&mut w, row).map_err(std::io::Error::from)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<CampaignRow>, CampaignError> {
    let mut rows = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row =
            serde_json::from_str(&line).map_err(|e| CampaignError::BadRow { line: i + 1, message: e.to_string() })?;
        rows.push(row);
    }
    Ok(rows)
}

/// Canonical keys of the rows of `campaign` already on disk.
pub fn resume_index(rows: &[CampaignRow], campaign: Campaign) -> BTreeSet<String> {
    rows.iter().filter(|r| r.campaign == campaign).map(|r| r.key.clone()).collect()
}

struct Outcome {
    verdict: Verdict,
    note: String,
    witness: Option<RationalVector>,
}

impl Outcome {
    fn pass(note: impl Into<String>) -> Self {
        Self { verdict: Verdict::Pass, note: note.into(), witness: None }
    }

    fn skip(note: impl Into<String>) -> Self {
        Self { verdict: Verdict::Skip, note: note.into(), witness: None }
    }

    fn fail(note: impl Into<String>) -> Self {
        Self { verdict: Verdict::Counterexample, note: note.into(), witness: None }
    }

    fn with(mut self, witness: Option<RationalVector>) -> Self {
        self.witness = witness;
        self
    }

    fn require(cond: bool, pass: impl Into<String>, fail: impl Into<String>) -> Self {
        if cond {
            Self::pass(pass)
        } else {
            Self::fail(fail)
        }
    }
}

fn check(campaign: Campaign, p: &Poset, key: &str, opts: &CampaignOptions) -> Outcome {
    let f = QuadraticForm::of_poset(p);
    match campaign {
        Campaign::Theorem => theorem(p, &f),
        Campaign::Prop1 => prop1(&f),
        Campaign::Prop2 => prop2(&f),
        Campaign::Prop3 => prop3(p, &f, opts),
        Campaign::Prop6 => prop6(p, &f),
        Campaign::Prop7 => prop7(p, &f),
        Campaign::Prop9 => prop9(p, &f, opts),
        Campaign::Lemma1 => lemma1(&f),
        Campaign::Lemma2 => lemma2(p, &f),
        Campaign::Lemma7 => lemma7(p, &f, opts),
        Campaign::Lemma8 => lemma8(p),
        Campaign::Lemma12 => lemma12(p),
        Campaign::Identities => identities(p, &f, seed_for(opts.seed, key), opts.identity_pairs),
        Campaign::Hypothesis => hypothesis(p, &f, opts),
    }
}

fn seed_for(seed: u64, key: &str) -> u64 {
    key.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

fn vec_note(v: &[Rational]) -> String {
    rational::fmt_vec(v)
}

fn theorem(p: &Poset, f: &QuadraticForm) -> Outcome {
    if !p.is_connected() {
        return Outcome::skip("disconnected");
    }
    if !f.definiteness().is_psd() {
        return Outcome::skip("indefinite form");
    }
    let c = c_cone(f);
    let shape = match recognize(p) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(format!("recognition failed: {e}")),
    };
    let anti = c.is_none();
    let note = format!("shape {shape}, antimonotonous {anti}");
    Outcome::require(anti == shape.is_r_set(), note.clone(), note).with(c.map(|w| w.vector))
}

fn prop1(f: &QuadraticForm) -> Outcome {
    let st = stationary_cone(f);
    let ct = c_tilde(f);
    for w in st.iter().chain(ct.iter()) {
        if !w.verify(f) {
            return Outcome::fail(format!("{:?} witness {} does not verify", w.cone, vec_note(&w.vector)));
        }
    }
    match (st, ct) {
        (Some(s), Some(c)) => {
            Outcome::fail(format!("St contains {} and C~ contains {}", vec_note(&s.vector), vec_note(&c.vector)))
                .with(Some(s.vector))
        }
        (Some(s), None) => Outcome::pass("St nonempty, C~ empty").with(Some(s.vector)),
        (None, Some(c)) => Outcome::pass("C~ nonempty, St empty").with(Some(c.vector)),
        (None, None) => Outcome::pass("both empty"),
    }
}

fn prop2(f: &QuadraticForm) -> Outcome {
    if f.det().is_zero() {
        return Outcome::skip("singular form");
    }
    let st = stationary_cone(f);
    let c = c_cone(f);
    if st.is_some() == c.is_some() {
        return Outcome::fail(format!("St nonempty {}, C nonempty {}", st.is_some(), c.is_some()));
    }
    match nonsingular_dichotomy(f) {
        Ok(Dichotomy::StNonempty(w)) if st.is_some() && w.verify(f) => {
            Outcome::pass("St nonempty").with(Some(w.vector))
        }
        Ok(Dichotomy::CNonempty(w)) if c.is_some() && w.verify(f) && w.is_c() => {
            Outcome::pass("C nonempty").with(Some(w.vector))
        }
        Ok(d) => Outcome::fail(format!("dichotomy witness disagrees or fails to verify: {d:?}")),
        Err(e) => Outcome::fail(format!("dichotomy construction failed: {e}")),
    }
}

fn prop3(p: &Poset, f: &QuadraticForm, opts: &CampaignOptions) -> Outcome {
    let def = f.definiteness();
    let fw = faithful_witness(f);
    let st = stationary_cone(f);
    let m = match minimize_on_simplex(f, opts.simplex_cap) {
        Ok(m) => m,
        Err(e) => return Outcome::skip(format!("simplex minimum unavailable: {e}")),
    };
    if let Some(w) = &fw {
        if def.kind != DefinitenessKind::PositiveDefinite {
            return Outcome::fail("faithful vector on a form that is not positive definite");
        }
        let g = f.gradient(&w.vector).expect("dimension");
        let in_st_plus = w.vector.iter().all(Signed::is_positive) && g.iter().all(|d| *d == g[0]) && g[0].is_positive();
        if !in_st_plus {
            return Outcome::fail("faithful vector is not in St+");
        }
        if rational::sum(&w.vector) != Rational::one() || !w.strictness_certified {
            return Outcome::fail("faithful vector is not a certified point of the simplex");
        }
        if c_cone(f).is_some() {
            return Outcome::fail("P-faithful form with nonempty C(f)");
        }
        if !m.interior || m.value != w.value {
            return Outcome::fail("faithful vector disagrees with the simplex minimum");
        }
    }
    if def.is_pd() {
        if fw.is_some() != st.is_some() {
            return Outcome::fail("positive definite: faithful vector and St disagree");
        }
        if fw.is_some() != m.interior {
            return Outcome::fail("positive definite: interior minimizer and faithful vector disagree");
        }
    }
    if p.graph().is_acyclic() && tits_form(p).definiteness().is_pd() {
        let anti = c_cone(f).is_none();
        if anti != fw.is_some() || anti != st.is_some() {
            return Outcome::fail(format!(
                "acyclic with PD Tits form: antimonotonous {anti}, faithful {}, St {}",
                fw.is_some(),
                st.is_some()
            ));
        }
    }
    Outcome::pass(format!("{:?}, faithful {}", def.kind, fw.is_some())).with(fw.map(|w| w.vector))
}

fn connected_psd_antimonotonous(p: &Poset, f: &QuadraticForm) -> Result<(), Outcome> {
    if !p.is_connected() {
        return Err(Outcome::skip("disconnected"));
    }
    if !f.definiteness().is_psd() {
        return Err(Outcome::skip("indefinite form"));
    }
    if let Some(w) = c_cone(f) {
        return Err(Outcome::skip("C(S) nonempty").with(Some(w.vector)));
    }
    Ok(())
}

fn prop6(p: &Poset, f: &QuadraticForm) -> Outcome {
    if let Err(o) = connected_psd_antimonotonous(p, f) {
        return o;
    }
    Outcome::require(p.graph().is_path(), "Gamma is a path", "Hasse graph is not a path")
}

fn prop7(p: &Poset, f: &QuadraticForm) -> Outcome {
    if let Err(o) = connected_psd_antimonotonous(p, f) {
        return o;
    }
    match recognize(p) {
        Ok(s) => Outcome::require(s.is_chain_or_wattle(), format!("{s}"), format!("shape {s}")),
        Err(e) => Outcome::fail(format!("recognition failed: {e}")),
    }
}

fn prop9(p: &Poset, f: &QuadraticForm, opts: &CampaignOptions) -> Outcome {
    if faithful_witness(f).is_none() {
        return Outcome::skip("not P-faithful");
    }
    let utmost = match is_utmost(p, opts.simplex_cap) {
        Ok(u) => u,
        Err(e) => return Outcome::skip(format!("utmost check unavailable: {e}")),
    };
    let (one, two) = classify::critical_lists();
    let member = one.iter().chain(two.iter()).find(|c| is_isomorphic(p, &c.poset)).map(|c| c.name);
    let note = format!("utmost {utmost}, list member {member:?}");
    Outcome::require(utmost == member.is_some(), note.clone(), note)
}

fn lemma1(f: &QuadraticForm) -> Outcome {
    let c = c_cone(f);
    let hat = hat_cones(f);
    if c.is_some() != hat.is_some() {
        return Outcome::fail(format!("C nonempty {}, relaxed cones nonempty {}", c.is_some(), hat.is_some()));
    }
    let Some(h) = hat else {
        return Outcome::pass("both empty");
    };
    if !h.verify(f) {
        return Outcome::fail(format!("relaxed witness {} does not verify", vec_note(&h.vector)));
    }
    if matches!(h.cone, Cone::Cminus | Cone::Cplus) {
        return Outcome::pass("relaxed witness already in C").with(Some(h.vector));
    }
    match hat_to_c(f, &h) {
        Ok(w) if w.verify(f) && w.is_c() => {
            Outcome::pass(format!("shifted {} into C", vec_note(&h.vector))).with(Some(w.vector))
        }
        Ok(w) => Outcome::fail(format!("shifted vector {} is not in C", vec_note(&w.vector))),
        Err(e) => Outcome::fail(format!("shift failed: {e}")),
    }
}

fn lemma2(p: &Poset, f: &QuadraticForm) -> Outcome {
    let comps = p.components();
    if comps.len() < 2 {
        return Outcome::skip("connected");
    }
    let whole = c_cone(f);
    let parts = comps.iter().filter(|c| c_cone(&f.restrict(c)).is_some()).count();
    let note = format!("C nonempty {}, components with C nonempty {parts}/{}", whole.is_some(), comps.len());
    Outcome::require(whole.is_some() == (parts > 0), note.clone(), note).with(whole.map(|w| w.vector))
}

fn lemma7(p: &Poset, f: &QuadraticForm, opts: &CampaignOptions) -> Outcome {
    let (q, g) = p.hasse();
    if !g.is_acyclic() {
        return Outcome::skip("Gamma has a cycle");
    }
    let degrees = g.degrees();
    let dynkin_terminals: Vec<usize> =
        (0..p.len()).filter(|&m| degrees[m] == 1 && dynkin_vector(f, m, opts.box_bound).is_some()).collect();
    if dynkin_terminals.is_empty() {
        return Outcome::skip("no Dynkin terminal point");
    }
    for &(a, b) in &q.arrows {
        let r = match p.reorient(a, b) {
            Ok(r) => r,
            Err(e) => return Outcome::fail(format!("reversing {}->{} failed: {e}", a + 1, b + 1)),
        };
        if r.graph().neighbors() != g.neighbors() {
            return Outcome::fail(format!("reversing {}->{} changed Gamma", a + 1, b + 1));
        }
        let fr = QuadraticForm::of_poset(&r);
        if let Some(&m) = dynkin_terminals.iter().find(|&&m| dynkin_vector(&fr, m, opts.box_bound).is_none()) {
            return Outcome::fail(format!(
                "terminal point {} loses its Dynkin vector after reversing {}->{}",
                m + 1,
                a + 1,
                b + 1
            ));
        }
    }
    let listed: Vec<String> = dynkin_terminals.iter().map(|m| (m + 1).to_string()).collect();
    Outcome::pass(format!("Dynkin terminal points {} stable under {} reversals", listed.join(","), q.arrows.len()))
}

fn lemma8(p: &Poset) -> Outcome {
    let n = p.len();
    if p.graph().is_acyclic() {
        return Outcome::skip("acyclic");
    }
    for mask in 1u64..(1 << n) - 1 {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if idx.len() >= 3 && !p.induced(&idx).graph().is_acyclic() {
            return Outcome::skip("a proper subposet is cyclic");
        }
    }
    let is_v = is_isomorphic(p, &v_poset());
    let is_crown = n.is_multiple_of(2) && n >= 4 && crown(n / 2).is_ok_and(|w| is_isomorphic(p, &w));
    Outcome::require(
        is_v || is_crown,
        if is_v { "V" } else { "crown" },
        "minimal cyclic poset is neither V nor a crown",
    )
}

fn lemma12(p: &Poset) -> Outcome {
    if !p.is_connected() || !p.graph().is_path() {
        return Outcome::skip("Gamma is not a path");
    }
    let chain_or_wattle = p.is_chain() || wattle_orders(p).is_some();
    let even = junction_parity_even(p);
    let note = format!("chain or wattle {chain_or_wattle}, even junction components {even}");
    Outcome::require(chain_or_wattle == even, note.clone(), note)
}

fn hypothesis(p: &Poset, f: &QuadraticForm, opts: &CampaignOptions) -> Outcome {
    let g = p.graph();
    if !p.is_connected() {
        return Outcome::skip("disconnected");
    }
    if !g.is_acyclic() {
        return Outcome::skip("Gamma has a cycle");
    }
    if g.is_path() {
        return Outcome::skip("Gamma is a path");
    }
    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&m| (degrees[m] != 1, m));
    for m in order {
        if let Some(dw) = dynkin_vector(f, m, opts.box_bound) {
            if let Ok(w) = dynkin_to_c(f, &dw) {
                if w.verify(f) && w.is_c() {
                    return Outcome::pass(format!("Dynkin vector at {}", m + 1)).with(Some(w.vector));
                }
            }
        }
    }
    match c_cone(f) {
        Some(w) if w.verify(f) => Outcome::pass("cone search").with(Some(w.vector)),
        _ => Outcome::fail("no vector of C(S) found"),
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=6).into())
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> RationalVector {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// Algebraic identities of the form, checked on seeded random vectors.
pub fn identity_failures(p: &Poset, seed: u64, pairs: usize) -> Vec<String> {
    let f = QuadraticForm::of_poset(p);
    let n = p.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let ev = |x: &[Rational]| f.evaluate(x).expect("dimension");
    let gr = |x: &[Rational]| f.gradient(x).expect("dimension");
    for _ in 0..pairs {
        let u = random_vector(&mut rng, n);
        let v = random_vector(&mut rng, n);
        let eps = random_rational(&mut rng);
        let (du, dv) = (gr(&u), gr(&v));
        let uv = rational::add(&u, &v);
        if ev(&uv) != ev(&u) + ev(&v) + rational::dot(&du, &v) {
            failures.push(format!("f(u+v) expansion fails at u={}, v={}", vec_note(&u), vec_note(&v)));
        }
        if rational::dot(&du, &v) != rational::dot(&dv, &u) {
            failures.push(format!("polar symmetry fails at u={}, v={}", vec_note(&u), vec_note(&v)));
        }
        let shifted = rational::add(&u, &rational::scale(&v, &eps));
        if ev(&shifted) != ev(&u) + &eps * &eps * ev(&v) + &eps * rational::dot(&u, &dv) {
            failures.push(format!("f(u+ev) expansion fails at u={}, v={}", vec_note(&u), vec_note(&v)));
        }
        if ev(&u) * rational::int(2) != rational::dot(&u, &du) {
            failures.push(format!("Euler identity fails at u={}", vec_note(&u)));
        }
        let i = rng.gen_range(0..n);
        let d = Rational::new(rng.gen_range(1i64..=9).into(), rng.gen_range(1i64..=6).into());
        let mut bumped = u.clone();
        bumped[i] += &d;
        let db = gr(&bumped);
        if (0..n).any(|j| db[j] < du[j]) {
            failures.push(format!("gradient decreases when coordinate {} grows", i + 1));
        }
        if &db[i] - &du[i] < &d * rational::int(2) {
            failures.push(format!("partial {} gains less than 2d", i + 1));
        }
    }
    if QuadraticForm::of_poset(&p.antiisomorph()) != f {
        failures.push("dual poset has a different form".into());
    }
    if n <= 5 {
        if let Some(msg) = definiteness_scan(&f) {
            failures.push(msg);
        }
    }
    failures
}

/// Sign scan of `2f` over all integer vectors with entries in `[−3, 3]`.
fn definiteness_scan(f: &QuadraticForm) -> Option<String> {
    let n = f.n();
    let m: Vec<Vec<i64>> = f
        .doubled()
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_integer().try_into().expect("small entries")).collect())
        .collect();
    let mut x = vec![-3i64; n];
    let mut negative = false;
    let mut zero_nonzero = false;
    loop {
        let value: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * m[i][j] * x[j]).sum::<i64>()).sum();
        if value < 0 {
            negative = true;
            break;
        }
        if value == 0 && x.iter().any(|&v| v != 0) {
            zero_nonzero = true;
        }
        let Some(k) = x.iter().position(|&v| v < 3) else { break };
        x[k] += 1;
        x[..k].iter_mut().for_each(|v| *v = -3);
    }
    let kind = f.definiteness().kind;
    match kind {
        DefinitenessKind::PositiveDefinite if negative || zero_nonzero => {
            Some("positive definite form vanishes or goes negative".into())
        }
        DefinitenessKind::PositiveSemidefiniteDegenerate if negative => {
            Some("semidefinite form takes a negative value".into())
        }
        DefinitenessKind::Indefinite if !negative => Some("indefinite form has no negative value in the box".into()),
        _ => None,
    }
}

fn identities(p: &Poset, f: &QuadraticForm, seed: u64, pairs: usize) -> Outcome {
    if !f.definiteness().verify(f) {
        return Outcome::fail("definiteness certificate does not verify");
    }
    let failures = identity_failures(p, seed, pairs);
    match failures.first() {
        None => Outcome::pass(format!("{pairs} vector pairs")),
        Some(first) => Outcome::fail(format!("{} failures, first: {first}", failures.len())),
    }
}
