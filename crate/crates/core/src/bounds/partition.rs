//! Coefficient partitions and the bound `B_P` they induce.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{max_of, Scalar};

/// Largest degree for the exhaustive partition search.
pub const MAX_EXHAUSTIVE_DEGREE: usize = 10;

/// A partition `{P_1, …, P_t}` of `{0, …, n-1}` with a designated first part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr")]
pub struct PartitionSpec {
    parts: Vec<Vec<usize>>,
    p1_index: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionRepr {
    parts: Vec<Vec<usize>>,
    p1_index: usize,
}

impl TryFrom<PartitionRepr> for PartitionSpec {
    type Error = Error;

    fn try_from(r: PartitionRepr) -> Result<Self> {
        PartitionSpec::new(r.parts, r.p1_index)
    }
}

impl PartitionSpec {
    /// Checks that the parts are nonempty, disjoint and cover `0..n` for
    /// `n` the total element count. The first-part condition depends only
    /// on `n` and `t`, so it is checked here too.
    pub fn new(mut parts: Vec<Vec<usize>>, p1_index: usize) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if p1_index >= parts.len() {
            return Err(Error::InvalidPartition(format!(
                "p1_index {p1_index} but only {} parts",
                parts.len()
            )));
        }
        let n: usize = parts.iter().map(Vec::len).sum();
        let mut seen = BTreeSet::new();
        for part in &mut parts {
            if part.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            part.sort_unstable();
            for &i in part.iter() {
                if i >= n || !seen.insert(i) {
                    return Err(Error::InvalidPartition(format!("index {i} repeated or outside 0..{n}")));
                }
            }
        }
        let spec = PartitionSpec { parts, p1_index };
        let t = spec.parts.len();
        let top = *spec.first_part().last().expect("nonempty");
        if top > n - t {
            return Err(Error::InvalidPartition(format!("first part has max {top} > n - t = {}", n - t)));
        }
        Ok(spec)
    }

    /// Every index in one part.
    pub fn single(n: usize) -> Self {
        PartitionSpec { parts: vec![(0..n).collect()], p1_index: 0 }
    }

    /// Every index alone, `{0}` first.
    pub fn singletons(n: usize) -> Self {
        PartitionSpec { parts: (0..n).map(|i| vec![i]).collect(), p1_index: 0 }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn p1_index(&self) -> usize {
        self.p1_index
    }

    pub fn t(&self) -> usize {
        self.parts.len()
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn first_part(&self) -> &[usize] {
        &self.parts[self.p1_index]
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.degree() != n {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} indices, polynomial has degree {n}",
                self.degree()
            )));
        }
        Ok(())
    }

    /// `P_1` first, the remaining parts by increasing maximum.
    pub fn ordered_parts(&self) -> Vec<Vec<usize>> {
        let mut rest: Vec<Vec<usize>> = self
            .parts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != self.p1_index)
            .map(|(_, part)| part.clone())
            .collect();
        rest.sort_by_key(|part| *part.last().expect("nonempty"));
        let mut out = vec![self.first_part().to_vec()];
        out.extend(rest);
        out
    }
}

fn part_sum<T: Scalar>(a: &[T], part: &[usize]) -> T {
    part.iter().fold(T::zero(), |s, &i| s + a[i].abs())
}

/// `B_P = max{1, Σ_{P_1}|a_i|, 1 + Σ_{P_2}|a_i|, …}`.
pub fn partition_bound<T: Scalar>(p: &Polynomial<T>, partition: &PartitionSpec) -> Result<T> {
    partition.validate(p.degree())?;
    let a = p.coeffs();
    let first = part_sum(a, partition.first_part());
    Ok(partition
        .parts
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != partition.p1_index)
        .fold(max_of(T::one(), first), |acc, (_, part)| max_of(acc, T::one() + part_sum(a, part))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Greedy,
}

/// Picks the feasible part with the largest sum as `P_1`, which is optimal
/// for a fixed grouping.
fn best_labeling<T: Scalar>(a: &[T], parts: Vec<Vec<usize>>) -> Option<(PartitionSpec, T)> {
    let n = a.len();
    let t = parts.len();
    let sums: Vec<T> = parts.iter().map(|p| part_sum(a, p)).collect();
    let mut p1: Option<usize> = None;
    for (j, part) in parts.iter().enumerate() {
        let feasible = part.iter().all(|&i| i <= n - t);
        if feasible && p1.is_none_or(|k| sums[j] > sums[k]) {
            p1 = Some(j);
        }
    }
    let p1 = p1?;
    let bound = sums.iter().enumerate().fold(max_of(T::one(), sums[p1].clone()), |acc, (j, s)| {
        if j == p1 {
            acc
        } else {
            max_of(acc, T::one() + s.clone())
        }
    });
    let mut parts = parts;
    for part in &mut parts {
        part.sort_unstable();
    }
    Some((PartitionSpec { parts, p1_index: p1 }, bound))
}

struct Exhaustive<'a, T> {
    a: &'a [T],
    parts: Vec<Vec<usize>>,
    sums: Vec<T>,
    best: Option<(PartitionSpec, T)>,
}

impl<T: Scalar> Exhaustive<'_, T> {
    /// `max(S_(1), 1 + S_(2))` over the current part sums: no completion
    /// can do better, since sums only grow.
    fn lower_bound(&self) -> T {
        let mut top: Option<T> = None;
        let mut second: Option<T> = None;
        for s in &self.sums {
            match &top {
                Some(t0) if s <= t0 => {
                    if second.as_ref().is_none_or(|v| s > v) {
                        second = Some(s.clone());
                    }
                }
                _ => {
                    second = top.take();
                    top = Some(s.clone());
                }
            }
        }
        let top = top.unwrap_or_else(T::zero);
        let rest = second.map_or(T::zero(), |s| T::one() + s);
        max_of(max_of(T::one(), top), rest)
    }

    fn dfs(&mut self, i: usize) {
        if let Some((_, best)) = &self.best {
            if self.lower_bound() >= *best {
                return;
            }
        }
        if i == self.a.len() {
            if let Some((spec, bound)) = best_labeling(self.a, self.parts.clone()) {
                if self.best.as_ref().is_none_or(|(_, b)| bound < *b) {
                    self.best = Some((spec, bound));
                }
            }
            return;
        }
        let v = self.a[i].abs();
        for j in 0..=self.parts.len() {
            if j == self.parts.len() {
                self.parts.push(vec![i]);
                self.sums.push(v.clone());
                self.dfs(i + 1);
                self.parts.pop();
                self.sums.pop();
            } else {
                let old = self.sums[j].clone();
                self.parts[j].push(i);
                self.sums[j] = old.clone() + v.clone();
                self.dfs(i + 1);
                self.parts[j].pop();
                self.sums[j] = old;
            }
        }
    }
}

/// Longest-processing-time grouping into `t` parts.
fn lpt<T: Scalar>(a: &[T], order: &[usize], t: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); t];
    let mut sums = vec![T::zero(); t];
    for &i in order {
        let j = (0..t).reduce(|best, j| if sums[j] < sums[best] { j } else { best }).expect("t > 0");
        parts[j].push(i);
        sums[j] = sums[j].clone() + a[i].abs();
    }
    parts.retain(|p| !p.is_empty());
    parts
}

/// Minimizes `B_P`. The single-part and all-singleton partitions are always
/// candidates, so the result never exceeds either of those bounds.
pub fn search_partition<T: Scalar>(p: &Polynomial<T>, mode: SearchMode) -> Result<(PartitionSpec, T)> {
    let n = p.degree();
    let a = p.coeffs();
    fn consider<T: Scalar>(best: &mut Option<(PartitionSpec, T)>, cand: (PartitionSpec, T)) {
        if best.as_ref().is_none_or(|(_, b)| cand.1 < *b) {
            *best = Some(cand);
        }
    }
    let mut best: Option<(PartitionSpec, T)> = None;
    for base in [PartitionSpec::single(n), PartitionSpec::singletons(n)] {
        let bound = partition_bound(p, &base)?;
        consider(&mut best, (base, bound));
    }
    match mode {
        SearchMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_DEGREE {
                return Err(Error::DegreeOutOfRange { degree: n, min: 1, max: MAX_EXHAUSTIVE_DEGREE });
            }
            let mut search = Exhaustive { a, parts: Vec::new(), sums: Vec::new(), best: best.clone() };
            search.dfs(0);
            if let Some(found) = search.best {
                consider(&mut best, found);
            }
        }
        SearchMode::Greedy => {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| a[j].abs().partial_cmp(&a[i].abs()).unwrap_or(std::cmp::Ordering::Equal));
            for t in 1..=n {
                if let Some(found) = best_labeling(a, lpt(a, &order, t)) {
                    consider(&mut best, found);
                }
            }
        }
    }
    Ok(best.expect("baselines always present"))
}
