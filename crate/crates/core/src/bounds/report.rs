//! Every applicable bound for one polynomial, with the extremes tagged by source.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::partition::{search_partition, PartitionSpec, SearchMode, MAX_EXHAUSTIVE_DEGREE};
use super::{
    best_fiedler_bound, best_sparse, cauchy_bound, frobenius_n, inverse_lower_bound, lower_bound_reversal,
    w_bound, w_improves, x_bound, x_improves, ReversalStrategy, MAX_SPARSE_SEARCH_DEGREE,
};
use crate::companion::{enumerate_fiedler, enumerate_shapes, ShapeSpec, MAX_FIEDLER_DEGREE};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Index(usize),
    Text(String),
    Shape(ShapeSpec),
    Partition(PartitionSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct BoundEntry<T> {
    pub family: String,
    pub value: T,
    #[serde(default)]
    pub params: BTreeMap<String, Param>,
}

impl<T: Scalar> BoundEntry<T> {
    fn new(family: &str, value: T) -> Self {
        BoundEntry { family: family.to_string(), value, params: BTreeMap::new() }
    }

    fn with(mut self, key: &str, param: Param) -> Self {
        self.params.insert(key.to_string(), param);
        self
    }

    /// Lower-bound families are named `lower_*`.
    pub fn is_lower(&self) -> bool {
        self.family.starts_with("lower_")
    }

    /// `family` plus its index parameters, e.g. `x(b=5)`.
    pub fn source_tag(&self) -> String {
        let idx: Vec<String> = self
            .params
            .iter()
            .filter_map(|(k, v)| match v {
                Param::Index(i) => Some(format!("{k}={i}")),
                _ => None,
            })
            .collect();
        if idx.is_empty() {
            self.family.clone()
        } else {
            format!("{}({})", self.family, idx.join(","))
        }
    }
}

pub type Sourced<T> = BoundEntry<T>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct BoundReport<T> {
    pub degree: usize,
    pub zero_root_multiplicity: usize,
    pub families: Vec<BoundEntry<T>>,
    pub best_upper: Sourced<T>,
    /// Applies to the nonzero roots.
    pub best_lower: Option<Sourced<T>>,
    pub w_improves: Option<bool>,
    /// The `b` with `‖X_b‖_1 < N(F)` predicted.
    pub x_improves: Vec<usize>,
}

impl<T: Scalar> BoundReport<T> {
    pub fn family(&self, name: &str) -> Option<&BoundEntry<T>> {
        self.families.iter().find(|e| e.family == name)
    }

    pub fn value(&self, name: &str) -> Option<T> {
        self.family(name).map(|e| e.value.clone())
    }

    pub fn upper_bounds(&self) -> impl Iterator<Item = &BoundEntry<T>> {
        self.families.iter().filter(|e| !e.is_lower())
    }

    pub fn lower_bounds(&self) -> impl Iterator<Item = &BoundEntry<T>> {
        self.families.iter().filter(|e| e.is_lower())
    }

    /// `(b, ‖X_b‖_1)` for every `b` computed.
    pub fn x_bounds(&self) -> Vec<(usize, T)> {
        self.families
            .iter()
            .filter(|e| e.family == "x")
            .filter_map(|e| match e.params.get("b") {
                Some(Param::Index(b)) => Some((*b, e.value.clone())),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportOptions {
    /// `None` picks exhaustive up to its degree limit, greedy beyond.
    pub partition_mode: Option<SearchMode>,
    /// Degree limit for the all-shape upper and reversal searches.
    pub sparse_limit: usize,
    /// Degree limit for inverting every shape; Fiedler shapes are used up
    /// to their own limit beyond it.
    pub inverse_all_shapes_limit: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            partition_mode: None,
            sparse_limit: MAX_SPARSE_SEARCH_DEGREE,
            inverse_all_shapes_limit: 7,
        }
    }
}

fn best_inverse_lower<T: Scalar>(
    q: &Polynomial<T>,
    options: &ReportOptions,
) -> Result<Option<(T, ShapeSpec)>> {
    let n = q.degree();
    let shapes = if n < 2 {
        return Ok(None);
    } else if n <= options.inverse_all_shapes_limit {
        enumerate_shapes(n, true)?
    } else if n <= MAX_FIEDLER_DEGREE {
        enumerate_fiedler(n)?
    } else {
        return Ok(None);
    };
    let mut best: Option<(T, ShapeSpec)> = None;
    for s in shapes {
        let v = inverse_lower_bound(q, &s)?;
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, s));
        }
    }
    Ok(best)
}

/// Computes every family permitted by the degree and constant term. Zero
/// roots are stripped first and counted.
pub fn bound_report<T: Scalar>(p: &Polynomial<T>, options: &ReportOptions) -> Result<BoundReport<T>> {
    let degree = p.degree();
    let (q, zeros) = match p.strip_zero_roots() {
        Ok(stripped) => stripped,
        Err(Error::AllRootsZero) => {
            let families = vec![
                BoundEntry::new("all_roots_zero", T::zero()),
                BoundEntry::new("cauchy", cauchy_bound(p)),
                BoundEntry::new("frobenius", frobenius_n(p)),
            ];
            return Ok(BoundReport {
                degree,
                zero_root_multiplicity: degree,
                best_upper: families[0].clone(),
                families,
                best_lower: None,
                w_improves: None,
                x_improves: Vec::new(),
            });
        }
        Err(e) => return Err(e),
    };
    let n = q.degree();
    let mut families =
        vec![BoundEntry::new("cauchy", cauchy_bound(&q)), BoundEntry::new("frobenius", frobenius_n(&q))];
    if n >= 2 {
        let (v, r) = best_fiedler_bound(&q)?;
        families.push(BoundEntry::new("best_fiedler", v).with("r", Param::Index(r)));
        if n <= options.sparse_limit {
            let (v, s) = best_sparse(&q)?;
            families.push(BoundEntry::new("best_sparse", v).with("shape", Param::Shape(s)));
        }
        let mode = options.partition_mode.unwrap_or(if n <= MAX_EXHAUSTIVE_DEGREE {
            SearchMode::Exhaustive
        } else {
            SearchMode::Greedy
        });
        let mode_name = match mode {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Greedy => "greedy",
        };
        let (spec, v) = search_partition(&q, mode)?;
        families.push(
            BoundEntry::new("partition", v)
                .with("partition", Param::Partition(spec))
                .with("mode", Param::Text(mode_name.into())),
        );
    }
    let mut w_fires = None;
    let mut x_fires = Vec::new();
    if n >= 3 {
        families.push(BoundEntry::new("w", w_bound(&q)?));
        w_fires = Some(w_improves(&q)?);
        for b in 1..=n - 2 {
            families.push(BoundEntry::new("x", x_bound(&q, b)?).with("b", Param::Index(b)));
            if x_improves(&q, b)? {
                x_fires.push(b);
            }
        }
    }
    families.push(
        BoundEntry::new("lower_reversal", lower_bound_reversal(&q, ReversalStrategy::FrobeniusOnly)?)
            .with("strategy", Param::Text("frobenius_only".into())),
    );
    if (2..=options.sparse_limit).contains(&n) {
        families.push(
            BoundEntry::new("lower_reversal", lower_bound_reversal(&q, ReversalStrategy::BestSparse)?)
                .with("strategy", Param::Text("best_sparse".into())),
        );
    }
    if let Some((v, s)) = best_inverse_lower(&q, options)? {
        families.push(BoundEntry::new("lower_inverse", v).with("shape", Param::Shape(s)));
    }

    let mut best_upper: Option<&BoundEntry<T>> = None;
    let mut best_lower: Option<&BoundEntry<T>> = None;
    for e in &families {
        if e.is_lower() {
            if best_lower.is_none_or(|b| e.value > b.value) {
                best_lower = Some(e);
            }
        } else if best_upper.is_none_or(|b| e.value < b.value) {
            best_upper = Some(e);
        }
    }
    let best_upper = best_upper.expect("cauchy is always present").clone();
    let best_lower = best_lower.cloned();
    Ok(BoundReport {
        degree,
        zero_root_multiplicity: zeros,
        families,
        best_upper,
        best_lower,
        w_improves: w_fires,
        x_improves: x_fires,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> Polynomial<f64> {
        Polynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn example_81_report() {
        let r =
            bound_report(&poly(&[5.0, -5.0, -10.0, 20.0, 17.0, 1.0, -1.0, 4.0]), &ReportOptions::default())
                .unwrap();
        assert_eq!(r.value("frobenius"), Some(21.0));
        assert_eq!(r.value("w"), Some(9.0));
        assert!((r.best_upper.value - 5.0).abs() < 1e-12);
        assert_eq!(r.best_upper.source_tag(), "x(b=5)");
        assert_eq!(r.w_improves, Some(true));
        assert!(r.x_improves.contains(&5));
        assert_eq!(r.x_bounds().len(), 6);
        let lo = r.best_lower.as_ref().unwrap();
        assert!(lo.value <= r.best_upper.value);
    }

    #[test]
    fn unit_roots_bracketed() {
        let r = bound_report(&poly(&[-1.0, 0.0]), &ReportOptions::default()).unwrap();
        assert!(r.best_lower.unwrap().value <= 1.0 + 1e-12);
        assert!(r.best_upper.value >= 1.0 - 1e-12);
    }

    #[test]
    fn zero_roots_are_stripped() {
        let r = bound_report(&poly(&[0.0, 0.0, 1.0]), &ReportOptions::default()).unwrap();
        assert_eq!(r.zero_root_multiplicity, 2);
        assert_eq!(r.degree, 3);
        assert_eq!(r.best_upper.value, 1.0);
        assert_eq!(r.best_lower.unwrap().value, 1.0);
        let all = bound_report(&Polynomial::<f64>::monomial(3), &ReportOptions::default()).unwrap();
        assert_eq!(all.zero_root_multiplicity, 3);
        assert_eq!(all.best_upper.value, 0.0);
        assert!(all.best_lower.is_none());
    }

    #[test]
    fn extremes_dominate_entries() {
        let r = bound_report(&poly(&[0.3, -2.0, 0.5, 1.25, -0.75]), &ReportOptions::default()).unwrap();
        for e in r.upper_bounds() {
            assert!(r.best_upper.value <= e.value);
        }
        let lo = r.best_lower.clone().unwrap();
        for e in r.lower_bounds() {
            assert!(lo.value >= e.value);
        }
        assert!(lo.value <= r.best_upper.value);
    }

    #[test]
    fn json_round_trip() {
        let r =
            bound_report(&poly(&[-5.0, -1.0, -5.0, -4.0, -10.0, -3.0]), &ReportOptions::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: BoundReport<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let first = &v["families"][0];
        assert_eq!(first["family"], "cauchy");
        assert!(first["params"].as_object().unwrap().is_empty());
    }
}
