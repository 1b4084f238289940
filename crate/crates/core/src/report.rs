//! Full analysis of one poset, serialised deterministically.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, Classification};
use crate::cones::{
    c_cone, c_tilde, dynkin_vector, hat_cones, stationary_cone, ConeWitness, DynkinWitness, DEFAULT_DYNKIN_BOX,
};
use crate::error::Error;
use crate::linalg::RationalMatrix;
use crate::poset::{gamma_class, Poset, StructureReport};
use crate::quadform::{Definiteness, QuadraticForm};
use crate::rational::{self, Rational};
use crate::simplex_min::{faithful_witness, minimize_on_simplex, FaithfulWitness, SimplexMinimum, DEFAULT_SIMPLEX_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub box_bound: i64,
    pub simplex_cap: usize,
    pub timings: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { box_bound: DEFAULT_DYNKIN_BOX, simplex_cap: DEFAULT_SIMPLEX_CAP, timings: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetEcho {
    pub n: usize,
    pub canonical_key: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
    /// Hasse arrows `(lower, upper)`, 1-based.
    #[serde(with = "crate::one_based::pairs")]
    pub arrows: Vec<(usize, usize)>,
    pub relation_count: usize,
}

impl PosetEcho {
    pub fn of(p: &Poset) -> Self {
        Self {
            n: p.len(),
            canonical_key: p.canonical_form().key(),
            labels: p.labels().map(<[String]>::to_vec),
            arrows: p.quiver().arrows,
            relation_count: p.relations().len(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset, Error> {
        let p = Poset::from_relations(self.n, &self.arrows)?;
        Ok(match &self.labels {
            Some(l) => p.with_labels(l.clone()),
            None => p,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormReport {
    pub a: RationalMatrix,
    /// The integer matrix 2A.
    pub doubled: RationalMatrix,
    #[serde(with = "rational::serde_str")]
    pub det: Rational,
    #[serde(with = "rational::serde_str")]
    pub det_doubled: Rational,
    pub definiteness: Definiteness,
    pub two_concave: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub c: Option<ConeWitness>,
    pub c_tilde: Option<ConeWitness>,
    pub relaxed: Option<ConeWitness>,
    pub stationary: Option<ConeWitness>,
    pub faithful: Option<FaithfulWitness>,
    pub dynkin_box: i64,
    /// One Dynkin vector per pivot that has one.
    pub dynkin: Vec<DynkinWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub poset: PosetEcho,
    pub structure: StructureReport,
    pub gamma: Option<String>,
    pub form: FormReport,
    pub cones: ConeReport,
    pub simplex: SimplexMinimum,
    pub classification: Classification,
    /// Stage durations in milliseconds, present only on request.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<BTreeMap<String, f64>>,
}

struct Clock {
    on: bool,
    last: Instant,
    stages: BTreeMap<String, f64>,
}

impl Clock {
    fn lap(&mut self, stage: &str) {
        if self.on {
            let now = Instant::now();
            self.stages.insert(stage.to_string(), (now - self.last).as_secs_f64() * 1e3);
            self.last = now;
        }
    }
}

pub fn analyze(p: &Poset, opts: &ReportOptions) -> Result<AnalysisReport, Error> {
    let mut clock = Clock { on: opts.timings, last: Instant::now(), stages: BTreeMap::new() };
    let structure = p.structure();
    let gamma = if structure.connected { Some(gamma_class(p)?.to_string()) } else { None };
    clock.lap("structure");

    let f = QuadraticForm::of_poset(p);
    let form = FormReport {
        a: f.matrix().clone(),
        doubled: f.doubled(),
        det: f.det(),
        det_doubled: f.det_doubled(),
        definiteness: f.definiteness(),
        two_concave: f.is_two_concave(),
    };
    clock.lap("form");

    let cones = ConeReport {
        c: c_cone(&f),
        c_tilde: c_tilde(&f),
        relaxed: hat_cones(&f),
        stationary: stationary_cone(&f),
        faithful: faithful_witness(&f),
        dynkin_box: opts.box_bound,
        dynkin: (0..p.len()).filter_map(|m| dynkin_vector(&f, m, opts.box_bound)).collect(),
    };
    clock.lap("cones");

    let simplex = minimize_on_simplex(&f, opts.simplex_cap)?;
    clock.lap("simplex");
    let classification = classify(p, opts.simplex_cap)?;
    clock.lap("classify");

    Ok(AnalysisReport {
        poset: PosetEcho::of(p),
        structure,
        gamma,
        form,
        cones,
        simplex,
        classification,
        timings: opts.timings.then_some(clock.stages),
    })
}

impl AnalysisReport {
    /// Re-check every witness in the report against the form it describes.
    pub fn verify(&self) -> bool {
        let Ok(p) = self.poset.to_poset() else {
            return false;
        };
        let f = QuadraticForm::of_poset(&p);
        let c = &self.cones;
        let cone_ok = [&c.c, &c.c_tilde, &c.relaxed, &c.stationary, &self.classification.c_witness]
            .into_iter()
            .flatten()
            .all(|w| w.verify(&f));
        let dynkin_ok = c.dynkin.iter().all(|d| d.verify(&f));
        let m = &self.simplex;
        let simplex_ok = m.minimizer.iter().all(|x| *x >= Rational::from_integer(0.into()))
            && rational::sum(&m.minimizer) == Rational::from_integer(1.into())
            && f.evaluate(&m.minimizer).is_ok_and(|v| v == m.value);
        let faithful_ok = c.faithful.as_ref().is_none_or(|w| f.evaluate(&w.vector).is_ok_and(|v| v == w.value));
        cone_ok && dynkin_ok && simplex_ok && faithful_ok && self.form.definiteness.verify(&f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
