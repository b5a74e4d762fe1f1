//! Upper and lower bounds on root moduli, best-in-family selectors, and the
//! improvement predicates comparing them to the Frobenius bound.

mod partition;
mod report;

pub use partition::{partition_bound, search_partition, PartitionSpec, SearchMode, MAX_EXHAUSTIVE_DEGREE};
pub use report::{bound_report, BoundEntry, BoundReport, Param, ReportOptions, Sourced};

use serde::{Deserialize, Serialize};

use crate::companion::{
    inverse_sparse, l_matrix, sparse_from_shape, w_matrix, x_matrix, CompanionMatrix, ShapeSpec,
    MAX_SHAPE_DEGREE,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::{max_of, min_of, strictly_less, Scalar};

/// Largest degree for which the reversal lower bound searches every shape.
pub const MAX_SPARSE_SEARCH_DEGREE: usize = 10;

pub fn norm_inf<T: Scalar>(a: &Matrix<T>) -> T {
    a.norm_inf()
}

pub fn norm_one<T: Scalar>(a: &Matrix<T>) -> T {
    a.norm_one()
}

pub fn n_min<T: Scalar>(a: &Matrix<T>) -> T {
    a.n_min()
}

/// `N(C)`: every eigenvalue of `C` lies in the disc of this radius.
pub fn bound_from_matrix<T: Scalar>(c: &CompanionMatrix<T>) -> T {
    c.entries.n_min()
}

/// `max{|a_0|, 1+|a_1|, …, 1+|a_{n-1}|}`.
pub fn cauchy_bound<T: Scalar>(p: &Polynomial<T>) -> T {
    p.coeffs()[1..].iter().fold(p.constant_term().abs(), |acc, c| max_of(acc, T::one() + c.abs()))
}

fn abs_sum<T: Scalar>(c: &[T]) -> T {
    c.iter().fold(T::zero(), |s, v| s + v.abs())
}

/// `N(F) = min{max{1, Σ|a_i|}, max{|a_0|, 1+|a_1|, …}}`. Degree one is
/// accepted: the `1×1` Frobenius matrix `[-a_0]` gives `|a_0|` exactly.
pub fn frobenius_n<T: Scalar>(p: &Polynomial<T>) -> T {
    min_of(max_of(T::one(), abs_sum(p.coeffs())), cauchy_bound(p))
}

fn require_degree<T: Scalar>(p: &Polynomial<T>, min: usize) -> Result<usize> {
    let n = p.degree();
    if n < min {
        Err(Error::DegreeTooSmall { degree: n, min })
    } else {
        Ok(n)
    }
}

/// The largest `k` with `Σ_{i<k}|a_i| < 1`, clamped to `n-1`.
pub fn best_fiedler_index<T: Scalar>(p: &Polynomial<T>) -> Result<usize> {
    let n = require_degree(p, 2)?;
    let mut sum = T::zero();
    let mut r = 0;
    for (k, c) in p.coeffs().iter().enumerate() {
        sum = sum + c.abs();
        if sum < T::one() {
            r = k + 1;
        } else {
            break;
        }
    }
    Ok(r.min(n - 1))
}

/// `‖L_b‖_∞ = max{1, Σ_{i≤b}|a_i|, 1+max_{i>b}|a_i|}`.
pub fn l_norm<T: Scalar>(p: &Polynomial<T>, b: usize) -> Result<T> {
    let n = require_degree(p, 2)?;
    if b >= n {
        return Err(Error::IndexOutOfRange { index: b, min: 0, max: n - 1 });
    }
    let a = p.coeffs();
    let head = max_of(T::one(), abs_sum(&a[..=b]));
    Ok(a[b + 1..].iter().fold(head, |acc, c| max_of(acc, T::one() + c.abs())))
}

/// `(‖L_r‖_∞, r)`, the smallest ∞-norm over all Fiedler matrices.
pub fn best_fiedler_bound<T: Scalar>(p: &Polynomial<T>) -> Result<(T, usize)> {
    let r = best_fiedler_index(p)?;
    Ok((l_matrix(p, r)?.norm_inf(), r))
}

struct SparseSearch<'a, T> {
    n: usize,
    m: usize,
    /// `|a_{n-1-k}|`, the modulus on subdiagonal `k`.
    vals: &'a [T],
    order: &'a [usize],
    rows: Vec<T>,
    pos: Vec<usize>,
    best: T,
    best_shape: ShapeSpec,
}

impl<T: Scalar> SparseSearch<'_, T> {
    fn dfs(&mut self, depth: usize) {
        if depth == self.order.len() {
            let value = self.rows.iter().cloned().fold(T::zero(), max_of);
            if value < self.best {
                self.best = value;
                self.best_shape =
                    ShapeSpec::new(self.n, self.m, self.pos.clone()).expect("search only visits valid rows");
            }
            return;
        }
        let k = self.order[depth];
        let lo = (self.m + 1).max(k + 1);
        let hi = self.n.min(k + self.m + 1);
        for row in lo..=hi {
            let old = self.rows[row - 1].clone();
            let new = old.clone() + self.vals[k].clone();
            if new >= self.best {
                continue;
            }
            self.rows[row - 1] = new;
            self.pos[k] = row;
            self.dfs(depth + 1);
            self.rows[row - 1] = old;
        }
    }
}

/// Smallest `N(C)` over every unit sparse companion matrix of `p`, with a
/// shape attaining it. The flip swaps the two norms, so minimizing the
/// ∞-norm over all shapes suffices.
pub fn best_sparse<T: Scalar>(p: &Polynomial<T>) -> Result<(T, ShapeSpec)> {
    let n = p.degree();
    if !(2..=MAX_SHAPE_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange { degree: n, min: 2, max: MAX_SHAPE_DEGREE });
    }
    let vals: Vec<T> = (0..n).map(|k| p.coeffs()[n - 1 - k].abs()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap_or(std::cmp::Ordering::Equal));

    let frob = ShapeSpec::frobenius(n);
    let f = sparse_from_shape(p, &frob)?;
    let (mut best, mut best_shape) =
        if f.norm_one() < f.norm_inf() { (f.norm_one(), frob.flip()) } else { (f.norm_inf(), frob) };
    let (l, r) = best_fiedler_bound(p)?;
    if l < best {
        best = l;
        best_shape = ShapeSpec::l_shape(n, r)?;
    }
    for m in 0..n {
        if best <= T::one() {
            break;
        }
        let mut rows = vec![T::one(); n];
        rows[n - 1] = T::zero();
        let mut search = SparseSearch {
            n,
            m,
            vals: &vals,
            order: &order,
            rows,
            pos: vec![0; n],
            best: best.clone(),
            best_shape: best_shape.clone(),
        };
        search.dfs(0);
        best = search.best;
        best_shape = search.best_shape;
    }
    Ok((best, best_shape))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReversalStrategy {
    FrobeniusOnly,
    BestSparse,
}

/// `1 / N(C(p♯))` for the Frobenius matrix of `p♯` or the best sparse one.
pub fn lower_bound_reversal<T: Scalar>(p: &Polynomial<T>, strategy: ReversalStrategy) -> Result<T> {
    let rev = p.reversal()?;
    let n_rev = match strategy {
        ReversalStrategy::FrobeniusOnly => frobenius_n(&rev),
        ReversalStrategy::BestSparse => {
            let n = p.degree();
            if n > MAX_SPARSE_SEARCH_DEGREE {
                return Err(Error::DegreeOutOfRange { degree: n, min: 2, max: MAX_SPARSE_SEARCH_DEGREE });
            }
            min_of(best_sparse(&rev)?.0, frobenius_n(&rev))
        }
    };
    Ok(T::one() / n_rev)
}

/// `‖W‖_∞`, computed from the dense matrix.
pub fn w_bound<T: Scalar>(p: &Polynomial<T>) -> Result<T> {
    Ok(w_matrix(p)?.norm_inf())
}

/// Row sums of `W` read off directly:
/// `max{|a_0|+|a_{n-1}|, 1, 1+max_{1≤i≤n-2}|a_i|/|a_0|}`.
pub fn w_norm_closed_form<T: Scalar>(p: &Polynomial<T>) -> Result<T> {
    let n = require_degree(p, 3)?;
    let a = p.coeffs();
    let a0 = a[0].abs();
    if a0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let first = a0.clone() + a[n - 1].abs();
    Ok(a[1..n - 1]
        .iter()
        .fold(max_of(first, T::one()), |acc, c| max_of(acc, T::one() + c.abs() / a0.clone())))
}

/// `‖X_b‖_1`, computed from the dense matrix.
pub fn x_bound<T: Scalar>(p: &Polynomial<T>, b: usize) -> Result<T> {
    Ok(x_matrix(p, b)?.norm_one())
}

/// Column sums of `X_b`:
/// `max{|a_0|, 1, 1+|a_i| (i≥b+2), 1+|a_{b+1}|+|a_b/a_0|, 1+|a_i/a_0| (1≤i≤b-1)}`.
pub fn x_norm_closed_form<T: Scalar>(p: &Polynomial<T>, b: usize) -> Result<T> {
    let n = p.degree();
    if n < 3 || b == 0 || b > n - 2 {
        return Err(Error::IndexOutOfRange { index: b, min: 1, max: n.saturating_sub(2) });
    }
    let a = p.coeffs();
    let a0 = a[0].abs();
    if a0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut v = max_of(a0.clone(), T::one());
    for c in &a[b + 2..] {
        v = max_of(v, T::one() + c.abs());
    }
    v = max_of(v, T::one() + a[b + 1].abs() + a[b].abs() / a0.clone());
    for c in &a[1..b] {
        v = max_of(v, T::one() + c.abs() / a0.clone());
    }
    Ok(v)
}

/// `(‖X_β‖_1, β)` minimizing over `1 ≤ b ≤ n-2`; ties go to the smallest `b`.
pub fn best_x_bound<T: Scalar>(p: &Polynomial<T>) -> Result<(T, usize)> {
    let n = require_degree(p, 3)?;
    let mut best: Option<(T, usize)> = None;
    for b in 1..=n - 2 {
        let v = x_bound(p, b)?;
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, b));
        }
    }
    Ok(best.expect("n >= 3 gives at least one b"))
}

/// `1 / N(C⁻¹)` for the sparse companion matrix of `p` with shape `s`.
pub fn inverse_lower_bound<T: Scalar>(p: &Polynomial<T>, s: &ShapeSpec) -> Result<T> {
    if p.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let inv = inverse_sparse(&sparse_from_shape(p, s)?)?;
    Ok(T::one() / inv.n_min())
}

/// `1 < |a_0| < 1 + M - |a_{n-1}|`, strict with the scalar margin.
pub fn w_improves<T: Scalar>(p: &Polynomial<T>) -> Result<bool> {
    let n = require_degree(p, 3)?;
    let a0 = p.constant_term().abs();
    if a0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let m = p.tail_stats()?.max_modulus;
    let upper = T::one() + m - p.coeffs()[n - 1].abs();
    Ok(strictly_less(&T::one(), &a0) && strictly_less(&a0, &upper))
}

/// `1 < |a_0| < 1 + M`, `b ≥ m` and `|a_{b+1}| + |a_b/a_0| < M`.
pub fn x_improves<T: Scalar>(p: &Polynomial<T>, b: usize) -> Result<bool> {
    let n = p.degree();
    if n < 3 || b == 0 || b > n - 2 {
        return Err(Error::IndexOutOfRange { index: b, min: 1, max: n.saturating_sub(2) });
    }
    let a = p.coeffs();
    let a0 = a[0].abs();
    if a0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let stats = p.tail_stats()?;
    let big_m = stats.max_modulus;
    let pair = a[b + 1].abs() + a[b].abs() / a0.clone();
    Ok(strictly_less(&T::one(), &a0)
        && strictly_less(&a0, &(T::one() + big_m.clone()))
        && b >= stats.last_index
        && strictly_less(&pair, &big_m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::{enumerate_fiedler, enumerate_shapes, frobenius};

    fn poly(c: &[f64]) -> Polynomial<f64> {
        Polynomial::new(c.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    fn ex41() -> Polynomial<f64> {
        poly(&[-0.1, -0.1, -0.1, -0.5, -0.1, -0.3, -0.1, -0.1])
    }

    fn ex81() -> Polynomial<f64> {
        poly(&[5.0, -5.0, -10.0, 20.0, 17.0, 1.0, -1.0, 4.0])
    }

    #[test]
    fn cauchy_and_frobenius() {
        let ex51 = poly(&[-3.0, -2.0, -4.0, -1.0, -2.0, -1.0]);
        assert_eq!(cauchy_bound(&ex51), 5.0);
        assert_eq!(frobenius_n(&ex51), 5.0);
        assert_eq!(cauchy_bound(&Polynomial::<f64>::monomial(4)), 1.0);
        assert_eq!(frobenius_n(&ex81()), 21.0);
        assert_eq!(frobenius_n(&poly(&[-0.2, -2.0, -5.0, -6.0, -2.0, -1.0, -4.0])), 7.0);
        assert_eq!(frobenius_n(&poly(&[-1.0, -3.0, -5.0, -1.0, -6.0, -1.0, -3.0, -1.0])), 7.0);
        let ex61 = poly(&[-5.0, -1.0, -5.0, -4.0, -10.0, -3.0]);
        assert_eq!(frobenius(&ex61).unwrap().n_min(), 11.0);
        assert_eq!(frobenius_n(&poly(&[-3.0])), 3.0);
    }

    #[test]
    fn fiedler_example_table() {
        let p = ex41();
        assert_eq!(best_fiedler_index(&p).unwrap(), 5);
        let want = [1.5, 1.5, 1.5, 1.3, 1.3, 1.2, 1.3, 1.4];
        for (b, w) in want.iter().enumerate() {
            let dense = l_matrix(&p, b).unwrap().norm_inf();
            assert!(close(dense, *w), "b={b}: {dense}");
            assert!(close(l_norm(&p, b).unwrap(), dense));
        }
        let (v, r) = best_fiedler_bound(&p).unwrap();
        assert!(close(v, 1.2));
        assert_eq!(r, 5);
    }

    #[test]
    fn fiedler_index_boundaries() {
        assert_eq!(best_fiedler_index(&poly(&[2.0, 0.1, 0.1])).unwrap(), 0);
        assert_eq!(best_fiedler_index(&Polynomial::<f64>::monomial(4)).unwrap(), 3);
        assert_eq!(best_fiedler_bound(&Polynomial::<f64>::monomial(4)).unwrap(), (1.0, 3));
    }

    #[test]
    fn best_fiedler_beats_every_fiedler() {
        let p = poly(&[0.3, -0.2, 0.4, 1.5, -0.1, 0.05, 2.0]);
        let (v, _) = best_fiedler_bound(&p).unwrap();
        for s in enumerate_fiedler(7).unwrap() {
            assert!(v <= sparse_from_shape(&p, &s).unwrap().norm_inf() + 1e-12);
        }
    }

    #[test]
    fn best_sparse_matches_brute_force() {
        for c in [
            vec![0.3, -0.2, 0.4, 1.5, -0.1, 0.05],
            vec![-0.2, -2.0, -5.0, -6.0, -2.0, -1.0, -4.0],
            vec![0.01, 0.5, 0.02, 0.9, 0.3],
        ] {
            let p = poly(&c);
            let brute = enumerate_shapes(p.degree(), false)
                .unwrap()
                .iter()
                .map(|s| sparse_from_shape(&p, s).unwrap().n_min())
                .fold(f64::INFINITY, f64::min);
            let (v, s) = best_sparse(&p).unwrap();
            assert!(close(v, brute), "{v} vs {brute}");
            assert!(close(sparse_from_shape(&p, &s).unwrap().n_min(), v));
        }
    }

    #[test]
    fn example_62_displayed_matrix() {
        let p = poly(&[-0.2, -2.0, -5.0, -6.0, -2.0, -1.0, -4.0]);
        let s = ShapeSpec::new(7, 3, vec![4, 4, 6, 7, 5, 6, 7]).unwrap();
        let c = sparse_from_shape(&p, &s).unwrap();
        assert!(close(bound_from_matrix(&c), 6.2));
        assert!(close(lower_bound_reversal(&p, ReversalStrategy::FrobeniusOnly).unwrap(), 1.0 / 31.0));
        assert!(close(lower_bound_reversal(&p, ReversalStrategy::BestSparse).unwrap(), 1.0 / 31.0));
    }

    #[test]
    fn example_61_lower_bounds() {
        let p = poly(&[-5.0, -1.0, -5.0, -4.0, -10.0, -3.0]);
        assert!(close(lower_bound_reversal(&p, ReversalStrategy::FrobeniusOnly).unwrap(), 1.0 / 3.0));
        let shown = ShapeSpec::new(6, 2, vec![3, 3, 4, 6, 5, 6]).unwrap();
        let c = sparse_from_shape(&p.reversal().unwrap(), &shown).unwrap();
        assert!(close(1.0 / c.n_min(), 5.0 / 11.0));
        let best = lower_bound_reversal(&p, ReversalStrategy::BestSparse).unwrap();
        assert!(best >= 5.0 / 11.0 - 1e-12);
    }

    #[test]
    fn w_and_x_examples() {
        let p = ex81();
        assert_eq!(w_bound(&p).unwrap(), 9.0);
        assert_eq!(w_norm_closed_form(&p).unwrap(), 9.0);
        assert!(close(x_bound(&p, 5).unwrap(), 5.0));
        assert_eq!(best_x_bound(&p).unwrap().1, 5);
        assert!(w_improves(&p).unwrap());
        assert!(x_improves(&p, 5).unwrap());
        let s7 = poly(&[-6.0, 18.0, 36.0, 6.0, 12.0, -1.0]);
        assert_eq!(w_bound(&s7).unwrap(), 7.0);
        assert_eq!(frobenius_n(&s7), 37.0);
    }

    #[test]
    fn closed_forms_match_dense() {
        for c in [
            vec![5.0, -5.0, -10.0, 20.0, 17.0, 1.0, -1.0, 4.0],
            vec![0.8, 0.2, 4.0],
            vec![-0.3, 2.5, -1.0, 0.7, 3.0],
            vec![2.0, 0.0, 0.0, 0.0],
        ] {
            let p = poly(&c);
            assert!(close(w_bound(&p).unwrap(), w_norm_closed_form(&p).unwrap()));
            for b in 1..=p.degree() - 2 {
                assert!(close(x_bound(&p, b).unwrap(), x_norm_closed_form(&p, b).unwrap()));
            }
        }
    }

    #[test]
    fn unit_constant_never_improves() {
        let p = poly(&[1.0, 3.0, 0.1, 0.2, 0.5]);
        assert!(!w_improves(&p).unwrap());
        for b in 1..=3 {
            assert!(!x_improves(&p, b).unwrap());
        }
    }

    #[test]
    fn inverse_lower_bound_of_frobenius() {
        let p = poly(&[-5.0, -1.0, -5.0, -4.0, -10.0, -3.0]);
        let via_inverse = inverse_lower_bound(&p, &ShapeSpec::frobenius(6)).unwrap();
        let via_reversal = lower_bound_reversal(&p, ReversalStrategy::FrobeniusOnly).unwrap();
        assert!(close(via_inverse, via_reversal));
        let unit = poly(&[-1.0, 0.0]);
        let lb = inverse_lower_bound(&unit, &ShapeSpec::frobenius(2)).unwrap();
        assert!(lb <= 1.0 && frobenius_n(&unit) >= 1.0);
    }

    #[test]
    fn guards() {
        let z = poly(&[0.0, 1.0, 2.0]);
        assert!(matches!(
            lower_bound_reversal(&z, ReversalStrategy::FrobeniusOnly),
            Err(Error::ZeroConstantTerm)
        ));
        assert!(matches!(w_bound(&z), Err(Error::ZeroConstantTerm)));
        assert!(matches!(best_fiedler_index(&poly(&[1.0])), Err(Error::DegreeTooSmall { .. })));
        assert!(matches!(best_sparse(&Polynomial::<f64>::monomial(13)), Err(Error::DegreeOutOfRange { .. })));
    }
}
