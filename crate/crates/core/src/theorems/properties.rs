//! One check per registered property. Each check sees a single polynomial
//! and records what it compared in a [`Tally`].

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::corpus::CorpusEntry;
use super::Violation;
use crate::bounds::{
    best_fiedler_index, best_x_bound, frobenius_n, partition_bound, w_bound, w_improves, x_bound, x_improves,
    PartitionSpec,
};
use crate::companion::{
    build_extended_companion, enumerate_fiedler, enumerate_shapes, inverse_sparse, l_matrix,
    sparse_from_shape, CompanionMatrix, ShapeSpec, MAX_FIEDLER_DEGREE,
};
use crate::error::Result;
use crate::oracle::max_root_modulus;
use crate::poly::Polynomial;
use crate::scalar::{nearly_equal, strictly_less};

/// Margin for strict inequalities.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;
/// Slack allowed between a bound and an oracle root modulus.
pub const ROOT_TOLERANCE: f64 = 1e-8;
/// Shapes are enumerated exhaustively up to this degree and sampled above it.
pub const EXHAUSTIVE_SHAPE_DEGREE: usize = 7;
/// Set partitions are enumerated exhaustively up to this degree.
pub const EXHAUSTIVE_PARTITION_DEGREE: usize = 6;
pub const SAMPLED_SHAPES: usize = 150;
pub const SAMPLED_PARTITIONS: usize = 60;

const B: f64 = BOUNDARY_TOLERANCE;

/// Bound under test in the partition property; swapped out by mutation controls.
pub type PartitionBoundFn = fn(&Polynomial<f64>, &PartitionSpec) -> Result<f64>;

pub(crate) type Observed = Vec<(&'static str, f64)>;

/// What one polynomial contributed to a property.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub exercised: bool,
    pub near: usize,
    failures: usize,
    first: Option<(String, Observed)>,
}

impl Tally {
    fn fail(&mut self, ctx: impl FnOnce() -> (String, Observed)) {
        self.failures += 1;
        if self.first.is_none() {
            self.first = Some(ctx());
        }
    }

    /// `lhs < rhs`; values within the margin count as near-boundary.
    fn strict(&mut self, lhs: f64, rhs: f64, ctx: impl FnOnce() -> (String, Observed)) {
        self.exercised = true;
        if lhs < rhs - B {
        } else if (lhs - rhs).abs() <= B {
            self.near += 1;
        } else {
            self.fail(ctx);
        }
    }

    fn le(&mut self, lhs: f64, rhs: f64, ctx: impl FnOnce() -> (String, Observed)) {
        self.holds(lhs <= rhs + B, ctx);
    }

    pub(crate) fn holds(&mut self, ok: bool, ctx: impl FnOnce() -> (String, Observed)) {
        self.exercised = true;
        if !ok {
            self.fail(ctx);
        }
    }

    pub(crate) fn error(&mut self, e: crate::Error) {
        self.holds(false, || (format!("error: {e}"), Vec::new()));
    }

    pub(crate) fn into_violation(self, entry: &CorpusEntry) -> Option<Violation> {
        self.first.map(|(params, observed)| Violation {
            label: entry.label.clone(),
            coeffs: entry.poly.coeffs().to_vec(),
            params,
            observed: observed.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<BTreeMap<_, _>>(),
            failed_checks: self.failures,
        })
    }
}

/// Precomputed shape and partition families per degree.
#[derive(Debug, Default)]
pub(crate) struct ShapeBank {
    full: HashMap<usize, Vec<ShapeSpec>>,
    inverse_family: HashMap<usize, Vec<ShapeSpec>>,
    fiedler: HashMap<usize, Vec<ShapeSpec>>,
    partitions: HashMap<usize, Vec<PartitionSpec>>,
}

/// Shapes of `p♯` whose inverse is of type `E_c(p♯)^{-1}` with `1 ≤ c ≤ n-2`.
fn in_inverse_family(s: &ShapeSpec) -> bool {
    (1..=s.n().saturating_sub(2)).contains(&s.m()) && s.has_zero_u_block()
}

impl ShapeBank {
    pub(crate) fn for_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut bank = ShapeBank::default();
        let degrees: BTreeSet<usize> = degrees.into_iter().collect();
        for n in degrees {
            if n < 2 {
                continue;
            }
            if n <= EXHAUSTIVE_SHAPE_DEGREE {
                let all = enumerate_shapes(n, false).expect("degree in range");
                bank.inverse_family.insert(n, all.iter().filter(|s| in_inverse_family(s)).cloned().collect());
                bank.full.insert(n, all);
            }
            if n <= MAX_FIEDLER_DEGREE {
                bank.fiedler.insert(n, enumerate_fiedler(n).expect("degree in range"));
            }
            if n <= EXHAUSTIVE_PARTITION_DEGREE {
                bank.partitions.insert(n, all_labeled_partitions(n));
            }
        }
        bank
    }

    fn shapes(&self, n: usize, rng: &mut ChaCha8Rng) -> Cow<'_, [ShapeSpec]> {
        match self.full.get(&n) {
            Some(v) => Cow::Borrowed(v),
            None => {
                let mut v: Vec<ShapeSpec> = (0..SAMPLED_SHAPES).map(|_| ShapeSpec::random(n, rng)).collect();
                v.push(ShapeSpec::frobenius(n).flip());
                v.extend((0..n).map(|b| ShapeSpec::l_shape(n, b).expect("b < n")));
                Cow::Owned(v)
            }
        }
    }

    fn inverse_shapes(&self, n: usize, rng: &mut ChaCha8Rng) -> Cow<'_, [ShapeSpec]> {
        match self.inverse_family.get(&n) {
            Some(v) => Cow::Borrowed(v),
            None => {
                let mut v = Vec::new();
                for _ in 0..SAMPLED_SHAPES * 50 {
                    let s = ShapeSpec::random(n, rng);
                    if in_inverse_family(&s) {
                        v.push(s);
                        if v.len() == SAMPLED_SHAPES {
                            break;
                        }
                    }
                }
                Cow::Owned(v)
            }
        }
    }

    fn fiedler(&self, n: usize) -> &[ShapeSpec] {
        self.fiedler.get(&n).map_or(&[], Vec::as_slice)
    }

    fn partitions(&self, n: usize, rng: &mut ChaCha8Rng) -> Cow<'_, [PartitionSpec]> {
        match self.partitions.get(&n) {
            Some(v) => Cow::Borrowed(v),
            None => {
                let mut v = vec![PartitionSpec::single(n), PartitionSpec::singletons(n)];
                v.extend((0..SAMPLED_PARTITIONS).map(|_| random_partition(n, rng)));
                Cow::Owned(v)
            }
        }
    }
}

/// Every set partition of `0..n` (restricted growth strings) with every
/// admissible choice of first part.
fn all_labeled_partitions(n: usize) -> Vec<PartitionSpec> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let t = rgs.iter().max().map_or(0, |m| m + 1);
        let mut parts = vec![Vec::new(); t];
        for (i, &l) in rgs.iter().enumerate() {
            parts[l].push(i);
        }
        for j in 0..t {
            if let Ok(spec) = PartitionSpec::new(parts.clone(), j) {
                out.push(spec);
            }
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let cap = rgs[..i].iter().max().copied().unwrap_or(0) + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|v| *v = 0);
                break;
            }
        }
    }
}

/// Random labels, empty parts dropped, uniformly chosen admissible first part.
fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> PartitionSpec {
    let t = rng.gen_range(1..=n);
    let mut parts = vec![Vec::new(); t];
    for i in 0..n {
        parts[rng.gen_range(0..t)].push(i);
    }
    parts.retain(|p| !p.is_empty());
    let t = parts.len();
    // distinct maxima make the smallest one at most n - t
    let feasible: Vec<usize> = (0..t).filter(|&j| *parts[j].last().expect("nonempty") <= n - t).collect();
    let j = feasible[rng.gen_range(0..feasible.len())];
    PartitionSpec::new(parts, j).expect("admissible by construction")
}

pub(crate) struct Trial<'a> {
    pub p: &'a Polynomial<f64>,
    pub bank: &'a ShapeBank,
    pub rng: ChaCha8Rng,
}

fn shape_tag(s: &ShapeSpec) -> String {
    format!("shape m={} pos={:?}", s.m(), s.pos())
}

fn partition_tag(p: &PartitionSpec) -> String {
    format!("partition {:?} p1={}", p.parts(), p.p1_index())
}

fn abs_coeffs(p: &Polynomial<f64>) -> Vec<f64> {
    p.abs_coeffs()
}

/// Tail maximum `M`, its multiplicity `u`, and `|a_{n-1}|`.
fn tail(p: &Polynomial<f64>) -> Result<(f64, usize, f64)> {
    let s = p.tail_stats()?;
    Ok((s.max_modulus, s.count, p.coeffs()[p.degree() - 1].abs()))
}

macro_rules! try_or_record {
    ($t:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => {
                $t.error(e);
                return;
            }
        }
    };
}

/// Non-Frobenius shapes with their companion matrices.
fn sparse_matrices<'s>(
    p: &'s Polynomial<f64>,
    shapes: &'s [ShapeSpec],
) -> impl Iterator<Item = (&'s ShapeSpec, CompanionMatrix<f64>)> + 's {
    shapes
        .iter()
        .filter(|s| !s.is_frobenius())
        .map(move |s| (s, sparse_from_shape(p, s).expect("shape matches degree")))
}

pub(crate) fn thm_3_1(tr: &mut Trial, t: &mut Tally) {
    let n = tr.p.degree();
    let nf = frobenius_n(tr.p);
    let a0 = tr.p.constant_term().abs();
    let shapes = tr.bank.shapes(n, &mut tr.rng);
    for (s, c) in sparse_matrices(tr.p, &shapes) {
        let nc = c.n_min();
        if strictly_less(&nc, &nf) {
            t.strict(a0, 1.0, || (shape_tag(s), vec![("N(C)", nc), ("N(F)", nf), ("|a0|", a0)]));
        }
    }
}

pub(crate) fn thm_3_2(tr: &mut Trial, t: &mut Tally) {
    let n = tr.p.degree();
    let nf = frobenius_n(tr.p);
    let (m, _, _) = try_or_record!(t, tail(tr.p));
    let a = abs_coeffs(tr.p);
    let maximal: Vec<usize> = (1..n).filter(|&i| nearly_equal(&a[i], &m)).collect();
    let shapes = tr.bank.shapes(n, &mut tr.rng);
    for (s, c) in sparse_matrices(tr.p, &shapes) {
        let (inf, one) = (c.norm_inf(), c.norm_one());
        if !strictly_less(&inf.min(one), &nf) {
            continue;
        }
        let in_last_row = maximal.iter().all(|&i| s.coefficient_cell(i).0 == n);
        let in_first_col = maximal.iter().all(|&i| s.coefficient_cell(i).1 == 1);
        let row_case = in_last_row && inf < nf + B && nf <= one + B;
        let col_case = in_first_col && one < nf + B && nf <= inf + B;
        t.holds(row_case || col_case, || {
            (shape_tag(s), vec![("inf", inf), ("one", one), ("N(F)", nf), ("M", m)])
        });
    }
}

pub(crate) fn cor_3_3(tr: &mut Trial, t: &mut Tally) {
    let n = tr.p.degree();
    let nf = frobenius_n(tr.p);
    let a0 = tr.p.constant_term().abs();
    let (m, u, _) = try_or_record!(t, tail(tr.p));
    let shapes = tr.bank.shapes(n, &mut tr.rng);
    let witness = sparse_matrices(tr.p, &shapes).find(|(_, c)| strictly_less(&c.n_min(), &nf));
    if let Some((s, c)) = witness {
        let lhs = (u as f64 - 1.0) * m;
        t.strict(lhs, 1.0 - a0, || {
            (shape_tag(s), vec![("(u-1)M", lhs), ("1-|a0|", 1.0 - a0), ("N(C)", c.n_min())])
        });
    }
}

pub(crate) fn thm_3_4(tr: &mut Trial, t: &mut Tally) {
    let n = tr.p.degree();
    let nf = frobenius_n(tr.p);
    let a0_nonzero = !tr.p.constant_term().is_zero();
    let shapes = tr.bank.shapes(n, &mut tr.rng);
    for (s, c) in sparse_matrices(tr.p, &shapes) {
        let nc = c.n_min();
        let obs = || (shape_tag(s), vec![("N(F)", nf), ("N(C)", nc)]);
        t.strict(nf, 2.0 * nc, obs);
        if a0_nonzero {
            t.strict(nf - nc, 1.0, obs);
        } else {
            t.le(nf - nc, 1.0, obs);
        }
    }
}

/// Number of leading coefficients `a_0, a_1, …` sitting in row `n`, minus one.
fn last_in_bottom_row(s: &ShapeSpec) -> usize {
    (0..s.n()).take_while(|&i| s.coefficient_cell(i).0 == s.n()).count() - 1
}

pub(crate) fn thm_4_1(tr: &mut Trial, t: &mut Tally) {
    let n = tr.p.degree();
    for s in tr.bank.fiedler(n) {
        let b = last_in_bottom_row(s);
        if b > n - 2 {
            continue;
        }
        let lb = try_or_record!(t, l_matrix(tr.p, b)).norm_inf();
        let fb = try_or_record!(t, sparse_from_shape(tr.p, s)).norm_inf();
        t.le(lb, fb, || (format!("b={b} {}", shape_tag(s)), vec![("L_b", lb), ("F_b", fb)]));
    }
}

pub(crate) fn thm_4_2(tr: &mut Trial, t: &mut Tally) {
    let n = tr.p.degree();
    let r = try_or_record!(t, best_fiedler_index(tr.p));
    let lr = try_or_record!(t, l_matrix(tr.p, r)).norm_inf();
    for b in 0..=n - 2 {
        let lb = try_or_record!(t, l_matrix(tr.p, b)).norm_inf();
        t.le(lr, lb, || (format!("r={r} b={b}"), vec![("L_r", lr), ("L_b", lb)]));
    }
    for s in tr.bank.fiedler(n) {
        let f = try_or_record!(t, sparse_from_shape(tr.p, s)).norm_inf();
        t.le(lr, f, || (format!("r={r} {}", shape_tag(s)), vec![("L_r", lr), ("F'", f)]));
    }
}

pub(crate) fn partition_check(tr: &mut Trial, t: &mut Tally, bound: PartitionBoundFn) {
    let n = tr.p.degree();
    let root_max = try_or_record!(t, max_root_modulus(tr.p));
    let parts = tr.bank.partitions(n, &mut tr.rng);
    for spec in parts.iter() {
        let bp = try_or_record!(t, bound(tr.p, spec));
        let ext = try_or_record!(t, build_extended_companion(tr.p, spec)).norm_inf();
        let obs = || (partition_tag(spec), vec![("B_P", bp), ("ext_inf", ext), ("max|root|", root_max)]);
        t.holds(root_max <= bp + ROOT_TOLERANCE, obs);
        t.holds((bp - ext).abs() <= B * ext.max(1.0), obs);
    }
}

pub(crate) fn thm_5_2(tr: &mut Trial, t: &mut Tally) {
    partition_check(tr, t, partition_bound::<f64>);
}

pub(crate) fn sec5_ratio(tr: &mut Trial, t: &mut Tally) {
    let n = tr.p.degree();
    let nf = frobenius_n(tr.p);
    let parts = tr.bank.partitions(n, &mut tr.rng);
    for spec in parts.iter() {
        let nc = try_or_record!(t, build_extended_companion(tr.p, spec)).n_min();
        let obs = || (partition_tag(spec), vec![("N(F)", nf), ("N(C(x^q p))", nc)]);
        t.strict(nf, 2.0 * nc, obs);
        t.le(nf - nc, 1.0, obs);
    }
}

fn frobenius_beats_all(p: &Polynomial<f64>, shapes: &[ShapeSpec], label: &str, t: &mut Tally) {
    let nf = frobenius_n(p);
    for (s, c) in sparse_matrices(p, shapes) {
        let nc = c.n_min();
        t.le(nf, nc, || (format!("{label} {}", shape_tag(s)), vec![("N(F)", nf), ("N(C)", nc)]));
    }
}

pub(crate) fn thm_6_2(tr: &mut Trial, t: &mut Tally) {
    let n = tr.p.degree();
    let a0 = tr.p.constant_term().abs();
    let shapes = tr.bank.shapes(n, &mut tr.rng);
    if a0 >= 1.0 - B {
        frobenius_beats_all(tr.p, &shapes, "p", t);
    }
    if a0 <= 1.0 + B && a0 > 0.0 {
        let rev = try_or_record!(t, tr.p.reversal());
        frobenius_beats_all(&rev, &shapes, "p#", t);
    }
}

pub(crate) fn cor_6_3(tr: &mut Trial, t: &mut Tally) {
    let n = tr.p.degree();
    if (tr.p.constant_term().abs() - 1.0).abs() > B {
        return;
    }
    let shapes = tr.bank.shapes(n, &mut tr.rng);
    frobenius_beats_all(tr.p, &shapes, "p", t);
    let rev = try_or_record!(t, tr.p.reversal());
    frobenius_beats_all(&rev, &shapes, "p#", t);
}

/// Inverses of the type-`E_c` companion matrices of `p♯`, `1 ≤ c ≤ n-2`.
fn inverse_family(tr: &mut Trial) -> Result<Vec<(ShapeSpec, CompanionMatrix<f64>)>> {
    let n = tr.p.degree();
    let rev = tr.p.reversal()?;
    let shapes = tr.bank.inverse_shapes(n, &mut tr.rng);
    shapes.iter().map(|s| Ok((s.clone(), inverse_sparse(&sparse_from_shape(&rev, s)?)?))).collect()
}

fn usable_for_inverse(p: &Polynomial<f64>) -> bool {
    p.degree() >= 3 && !p.constant_term().is_zero()
}

pub(crate) fn thm_7_1(tr: &mut Trial, t: &mut Tally) {
    if !usable_for_inverse(tr.p) {
        return;
    }
    let a0 = tr.p.constant_term().abs();
    let nf = frobenius_n(tr.p);
    let w = try_or_record!(t, w_bound(tr.p));
    let (m, _, last) = try_or_record!(t, tail(tr.p));
    let family = try_or_record!(t, inverse_family(tr));
    for (s, a) in &family {
        let (inf, one) = (a.norm_inf(), a.norm_one());
        let obs = |part: &str| {
            let tag = format!("({part}) {} of p#", shape_tag(s));
            move || (tag, vec![("N(F)", nf), ("W_inf", w), ("A_inf", inf), ("A_one", one)])
        };
        if (a0 - 1.0).abs() <= B {
            t.le(nf, inf.min(one), obs("a"));
        } else if a0 > 1.0 {
            t.le(w, inf, obs("b"));
            if nearly_equal(&last, &m) {
                t.le(nf, inf.min(one), obs("c"));
            }
        } else {
            t.le(nf - inf, 1.0, obs("d.i"));
            t.le(nf, 2.0 * inf, obs("d.ii"));
            t.le(nf, one, obs("d.iii"));
        }
    }
}

pub(crate) fn thm_7_2(tr: &mut Trial, t: &mut Tally) {
    if !usable_for_inverse(tr.p) {
        return;
    }
    let nf = frobenius_n(tr.p);
    let w = try_or_record!(t, w_bound(tr.p));
    let predicted = try_or_record!(t, w_improves(tr.p));
    let a0 = tr.p.constant_term().abs();
    let (m, _, last) = try_or_record!(t, tail(tr.p));
    t.exercised = true;
    if (w - nf).abs() <= B {
        t.near += 1;
        return;
    }
    let observed = w < nf;
    let direction =
        if observed { "only if: W < N(F) but condition fails" } else { "if: condition holds but W >= N(F)" };
    t.holds(observed == predicted, || {
        (
            direction.to_string(),
            vec![("W_inf", w), ("N(F)", nf), ("|a0|", a0), ("1+M-|a_{n-1}|", 1.0 + m - last)],
        )
    });
}

pub(crate) fn thm_7_3(tr: &mut Trial, t: &mut Tally) {
    if !usable_for_inverse(tr.p) || tr.p.constant_term().abs() <= 1.0 {
        return;
    }
    let nf = frobenius_n(tr.p);
    let w = try_or_record!(t, w_bound(tr.p));
    if strictly_less(&nf, &w) {
        t.strict(w, 2.0 * nf, || (String::new(), vec![("W_inf", w), ("N(F)", nf)]));
    }
}

pub(crate) fn thm_8_1(tr: &mut Trial, t: &mut Tally) {
    if !usable_for_inverse(tr.p) {
        return;
    }
    let a = abs_coeffs(tr.p);
    let n = a.len();
    let (m, _, last) = try_or_record!(t, tail(tr.p));
    if !(a[0] > 1.0 && strictly_less(&last, &m)) {
        return;
    }
    let (xb, beta) = try_or_record!(t, best_x_bound(tr.p));
    let mut candidates = vec![1.0 + a[n - 1], a[0]];
    candidates.extend((1..beta).map(|k| 1.0 + a[k] / a[0]));
    if !candidates.iter().any(|c| (c - xb).abs() <= B) {
        return;
    }
    let family = try_or_record!(t, inverse_family(tr));
    for (s, inv) in &family {
        let one = inv.norm_one();
        t.le(xb, one, || {
            (format!("beta={beta} {} of p#", shape_tag(s)), vec![("X_beta", xb), ("A_one", one)])
        });
    }
}

pub(crate) fn thm_8_2(tr: &mut Trial, t: &mut Tally) {
    if !usable_for_inverse(tr.p) {
        return;
    }
    let n = tr.p.degree();
    let nf = frobenius_n(tr.p);
    t.exercised = true;
    for b in 1..=n - 2 {
        let xb = try_or_record!(t, x_bound(tr.p, b));
        let predicted = try_or_record!(t, x_improves(tr.p, b));
        if (xb - nf).abs() <= B {
            t.near += 1;
            continue;
        }
        let observed = xb < nf;
        t.holds(observed == predicted, || {
            let dir = if observed { "only if" } else { "if" };
            (format!("b={b} {dir}"), vec![("X_b", xb), ("N(F)", nf)])
        });
    }
}

pub(crate) fn thm_8_3(tr: &mut Trial, t: &mut Tally) {
    if !usable_for_inverse(tr.p) {
        return;
    }
    let a0 = tr.p.constant_term().abs();
    if a0 <= 1.0 {
        return;
    }
    let n = tr.p.degree();
    let w = try_or_record!(t, w_bound(tr.p));
    let cap = 2.0 - 1.0 / a0;
    for b in 1..=n - 2 {
        let xb = try_or_record!(t, x_bound(tr.p, b));
        t.le(w / xb, cap, || (format!("b={b}"), vec![("W_inf", w), ("X_b", xb), ("2-1/|a0|", cap)]));
    }
}
