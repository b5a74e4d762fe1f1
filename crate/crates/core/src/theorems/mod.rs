//! Property harness: each registered theorem becomes a check run over a
//! seeded corpus, sweeping every shape where the statement quantifies over
//! all companion matrices.

mod corpus;
mod properties;
mod ratio_family;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use corpus::{generate, worked_examples, CorpusConfig, CorpusEntry, Distribution};
pub use properties::{
    PartitionBoundFn, BOUNDARY_TOLERANCE, EXHAUSTIVE_PARTITION_DEGREE, EXHAUSTIVE_SHAPE_DEGREE,
    ROOT_TOLERANCE, SAMPLED_PARTITIONS, SAMPLED_SHAPES,
};
pub use ratio_family::{expected_ratio, ratio_family_search, RatioWitness};

use crate::bounds::{bound_report, ReportOptions};
use crate::error::{Error, Result};
use crate::oracle::find_roots;
use properties::{ShapeBank, Tally, Trial};

/// First failing comparison for one polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub label: String,
    pub coeffs: Vec<f64>,
    pub params: String,
    pub observed: BTreeMap<String, f64>,
    /// Failing comparisons for this polynomial, including the one shown.
    pub failed_checks: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub theorem_id: String,
    /// Polynomials examined.
    pub trials: usize,
    /// Polynomials for which the hypotheses held and a comparison was made.
    pub exercised: usize,
    pub violations: Vec<Violation>,
    /// Strict comparisons that landed within the boundary tolerance.
    pub near_boundary: usize,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Nothing was actually compared; a pass here says nothing.
    pub fn is_vacuous(&self) -> bool {
        self.exercised == 0
    }
}

type Check = fn(&mut Trial, &mut Tally);

const REGISTRY: [(&str, Check); 16] = [
    ("thm_3_1", properties::thm_3_1),
    ("thm_3_2", properties::thm_3_2),
    ("cor_3_3", properties::cor_3_3),
    ("thm_3_4", properties::thm_3_4),
    ("thm_4_1", properties::thm_4_1),
    ("thm_4_2", properties::thm_4_2),
    ("thm_5_2", properties::thm_5_2),
    ("sec5_ratio", properties::sec5_ratio),
    ("thm_6_2", properties::thm_6_2),
    ("cor_6_3", properties::cor_6_3),
    ("thm_7_1", properties::thm_7_1),
    ("thm_7_2", properties::thm_7_2),
    ("thm_7_3", properties::thm_7_3),
    ("thm_8_1", properties::thm_8_1),
    ("thm_8_2", properties::thm_8_2),
    ("thm_8_3", properties::thm_8_3),
];

/// Registered property ids, in reporting order.
pub fn theorem_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|(id, _)| *id).collect()
}

fn lookup(id: &str) -> Result<(usize, Check)> {
    REGISTRY
        .iter()
        .enumerate()
        .find(|(_, (name, _))| *name == id)
        .map(|(i, (_, check))| (i, *check))
        .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

struct Prepared {
    corpus: Vec<CorpusEntry>,
    bank: ShapeBank,
}

impl Prepared {
    fn new(config: &CorpusConfig) -> Self {
        let corpus: Vec<CorpusEntry> =
            generate(config).into_iter().filter(|e| e.poly.degree() >= 2).collect();
        let bank = ShapeBank::for_degrees(corpus.iter().map(|e| e.poly.degree()));
        Prepared { corpus, bank }
    }

    /// Runs `check` on every entry in parallel. Each entry gets its own RNG
    /// derived from its seed and `salt`, so thread scheduling cannot change
    /// the outcome.
    fn run(&self, id: &str, salt: u64, check: impl Fn(&mut Trial, &mut Tally) + Sync) -> PropertyResult {
        let tallies: Vec<(Tally, &CorpusEntry)> = self
            .corpus
            .par_iter()
            .map(|entry| {
                let mut trial = Trial {
                    p: &entry.poly,
                    bank: &self.bank,
                    rng: ChaCha8Rng::seed_from_u64(corpus::mix(entry.seed ^ salt)),
                };
                let mut tally = Tally::default();
                check(&mut trial, &mut tally);
                (tally, entry)
            })
            .collect();
        let mut result = PropertyResult {
            theorem_id: id.to_string(),
            trials: tallies.len(),
            exercised: 0,
            violations: Vec::new(),
            near_boundary: 0,
        };
        for (tally, entry) in tallies {
            result.exercised += usize::from(tally.exercised);
            result.near_boundary += tally.near;
            result.violations.extend(tally.into_violation(entry));
        }
        result
    }
}

pub fn run_property(theorem_id: &str, config: &CorpusConfig) -> Result<PropertyResult> {
    let (salt, check) = lookup(theorem_id)?;
    Ok(Prepared::new(config).run(theorem_id, salt as u64, check))
}

/// Every registered property over one shared corpus.
pub fn run_all(config: &CorpusConfig) -> Vec<PropertyResult> {
    let prepared = Prepared::new(config);
    REGISTRY.iter().enumerate().map(|(salt, (id, check))| prepared.run(id, salt as u64, check)).collect()
}

/// The partition property with `bound` in place of the real `B_P`. Used
/// as a mutation control: a broken bound must be caught.
pub fn run_partition_property_with(config: &CorpusConfig, bound: PartitionBoundFn) -> PropertyResult {
    let (salt, _) = lookup("thm_5_2").expect("registered");
    Prepared::new(config)
        .run("thm_5_2", salt as u64, move |trial, tally| properties::partition_check(trial, tally, bound))
}

/// Every bound in [`bound_report`] against the root-finder oracle.
pub fn soundness_sweep(config: &CorpusConfig, options: &ReportOptions) -> PropertyResult {
    Prepared::new(config).run("soundness", u64::MAX, |trial, tally| {
        let report = match bound_report(trial.p, options) {
            Ok(r) => r,
            Err(e) => return tally.error(e),
        };
        let roots = match find_roots(trial.p, crate::oracle::DEFAULT_TOLERANCE) {
            Ok(r) => r,
            Err(e) => return tally.error(e),
        };
        let max = roots.max_modulus();
        for e in report.upper_bounds() {
            tally.holds(max <= e.value + ROOT_TOLERANCE, || {
                (e.source_tag(), vec![("bound", e.value), ("max|root|", max)])
            });
        }
        if let Some(min) = roots.min_nonzero_modulus() {
            for e in report.lower_bounds() {
                tally.holds(e.value <= min + ROOT_TOLERANCE, || {
                    (e.source_tag(), vec![("bound", e.value), ("min|root|", min)])
                });
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CorpusConfig {
        CorpusConfig {
            degrees: vec![3, 4, 5],
            samples: 12,
            distributions: vec![Distribution::Uniform(5.0), Distribution::Integer(4)],
            seed: 11,
        }
    }

    #[test]
    fn registry_is_complete() {
        let ids = theorem_ids();
        assert_eq!(ids.len(), 16);
        for want in [
            "thm_3_1",
            "thm_3_2",
            "cor_3_3",
            "thm_3_4",
            "thm_4_1",
            "thm_4_2",
            "thm_5_2",
            "sec5_ratio",
            "thm_6_2",
            "cor_6_3",
            "thm_7_1",
            "thm_7_2",
            "thm_7_3",
            "thm_8_1",
            "thm_8_2",
            "thm_8_3",
        ] {
            assert!(ids.contains(&want), "{want}");
        }
    }

    #[test]
    fn unknown_id_rejected() {
        assert_eq!(run_property("thm_9_9", &small()), Err(Error::UnknownTheorem("thm_9_9".into())));
    }

    #[test]
    fn empty_corpus_is_vacuous() {
        for r in run_all(&CorpusConfig::empty()) {
            assert!(r.passed() && r.is_vacuous() && r.trials == 0);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_property("thm_3_4", &small()), run_property("thm_3_4", &small()));
        let a = run_partition_property_with(&small(), crate::bounds::partition_bound::<f64>);
        assert_eq!(a, run_partition_property_with(&small(), crate::bounds::partition_bound::<f64>));
    }

    #[test]
    fn ratio_property_on_small_corpus() {
        let r = run_property("thm_3_4", &small()).unwrap();
        assert_eq!(r.trials, 72);
        assert!(r.passed(), "{:?}", r.violations.first());
        assert!(!r.is_vacuous());
    }
}
