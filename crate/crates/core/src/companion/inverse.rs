//! Block partition of a Hessenberg sparse companion matrix, its closed-form
//! inverse, and the `W` and `X_b` matrices built directly from `p`.

use serde::{Deserialize, Serialize};

use super::{CompanionKind, CompanionMatrix, ShapeSpec};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Blocks of
///
/// ```text
///     [ 0    I_c   0         ]
/// C = [ u    H     I_{n-c-1} ]
///     [ -a0  yᵀ    0         ]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct ECPartition<T> {
    pub c: usize,
    pub u: Vec<T>,
    pub y: Vec<T>,
    /// `(n-c-1) × c`.
    pub h: Matrix<T>,
    pub a0: T,
}

impl<T: Scalar> ECPartition<T> {
    pub fn order(&self) -> usize {
        self.c + self.u.len() + 1
    }

    pub fn reassemble(&self) -> Matrix<T> {
        let n = self.order();
        let c = self.c;
        let mut m = Matrix::zeros(n, n);
        for i in 0..n - 1 {
            m[(i, i + 1)] = T::one();
        }
        for (r, ur) in self.u.iter().enumerate() {
            m[(c + r, 0)] = ur.clone();
            for j in 0..c {
                m[(c + r, 1 + j)] = self.h[(r, j)].clone();
            }
        }
        m[(n - 1, 0)] = -self.a0.clone();
        for (j, yj) in self.y.iter().enumerate() {
            m[(n - 1, 1 + j)] = yj.clone();
        }
        m
    }
}

fn extract<T: Scalar>(a: &Matrix<T>, c: usize) -> ECPartition<T> {
    let n = a.rows();
    let k = n - c - 1;
    ECPartition {
        c,
        u: (0..k).map(|r| a[(c + r, 0)].clone()).collect(),
        y: (0..c).map(|j| a[(n - 1, 1 + j)].clone()).collect(),
        h: Matrix::from_fn(k, c, |r, j| a[(c + r, 1 + j)].clone()),
        a0: -a[(n - 1, 0)].clone(),
    }
}

/// Splits `C` into its blocks. With a recorded shape `c = m`; otherwise the
/// largest `c` whose blocks reproduce `C`.
pub fn ec_partition<T: Scalar>(cm: &CompanionMatrix<T>) -> Result<ECPartition<T>> {
    let a = &cm.entries;
    let n = a.rows();
    if !a.is_square() || n < 2 {
        return Err(Error::NotHessenbergSparse(format!("{}x{} matrix", a.rows(), a.cols())));
    }
    if a[(n - 1, 0)].is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let candidates: Vec<usize> = match &cm.shape {
        Some(s) if s.n() == n => vec![s.m()],
        _ => (0..n).rev().collect(),
    };
    candidates
        .into_iter()
        .map(|c| extract(a, c))
        .find(|part| &part.reassemble() == a)
        .ok_or_else(|| Error::NotHessenbergSparse("no block split reproduces the matrix".into()))
}

/// `C⁻¹` assembled blockwise from the partition.
pub fn inverse_sparse<T: Scalar>(cm: &CompanionMatrix<T>) -> Result<CompanionMatrix<T>> {
    let part = ec_partition(cm)?;
    let n = part.order();
    let c = part.c;
    let a0 = part.a0.clone();
    let mut inv = Matrix::zeros(n, n);
    for (j, yj) in part.y.iter().enumerate() {
        inv[(0, j)] = yj.clone() / a0.clone();
    }
    inv[(0, n - 1)] = -(T::one() / a0.clone());
    for i in 1..=c {
        inv[(i, i - 1)] = T::one();
    }
    for (r, ur) in part.u.iter().enumerate() {
        let row = c + 1 + r;
        for j in 0..c {
            inv[(row, j)] = -(ur.clone() * part.y[j].clone()) / a0.clone() - part.h[(r, j)].clone();
        }
        inv[(row, c + r)] = T::one();
        inv[(row, n - 1)] = ur.clone() / a0.clone();
    }
    Ok(CompanionMatrix {
        kind: CompanionKind::InverseSparse,
        entries: inv,
        shape: cm.shape.clone(),
        source_degree: cm.source_degree,
    })
}

fn nonzero_a0<T: Scalar>(p: &Polynomial<T>) -> Result<T> {
    let a0 = p.constant_term().clone();
    if a0.is_zero() {
        Err(Error::ZeroConstantTerm)
    } else {
        Ok(a0)
    }
}

/// The single inverse of an `E_1` companion matrix of `p♯`, written in the
/// coefficients of `p`. Its eigenvalues are the roots of `p`.
pub fn w_matrix<T: Scalar>(p: &Polynomial<T>) -> Result<CompanionMatrix<T>> {
    let n = p.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall { degree: n, min: 3 });
    }
    let a0 = nonzero_a0(p)?;
    let a = p.coeffs();
    let mut w = Matrix::zeros(n, n);
    w[(0, 0)] = -a[n - 1].clone();
    w[(0, n - 1)] = -a0.clone();
    for i in 1..n {
        w[(i, i - 1)] = T::one();
    }
    for i in 2..n {
        w[(i, 0)] = a[i - 1].clone() / a0.clone();
    }
    Ok(CompanionMatrix { kind: CompanionKind::W, entries: w, shape: None, source_degree: n })
}

/// Shape of the Fiedler matrix of `p♯` that `X_b` inverts: `m = n-2`, the
/// top `b` subdiagonals in row `n-1` and the rest in row `n`.
pub fn x_defining_shape(n: usize, b: usize) -> Result<ShapeSpec> {
    if n < 3 || b == 0 || b > n - 2 {
        return Err(Error::IndexOutOfRange { index: b, min: 1, max: n.saturating_sub(2) });
    }
    ShapeSpec::new(n, n - 2, (0..n).map(|k| if k < b { n - 1 } else { n }).collect())
}

/// `X_b`, the inverse of an `E_{n-2}` Fiedler companion matrix of `p♯`.
pub fn x_matrix<T: Scalar>(p: &Polynomial<T>, b: usize) -> Result<CompanionMatrix<T>> {
    let n = p.degree();
    if n < 3 || b == 0 || b > n - 2 {
        return Err(Error::IndexOutOfRange { index: b, min: 1, max: n.saturating_sub(2) });
    }
    let a0 = nonzero_a0(p)?;
    let a = p.coeffs();
    let mut x = Matrix::zeros(n, n);
    for j in 0..=n - 2 - b {
        x[(0, j)] = -a[n - 1 - j].clone();
    }
    x[(0, n - 1)] = -a0.clone();
    for i in 1..n {
        x[(i, i - 1)] = T::one();
    }
    for j in 1..=b {
        x[(n - 1, n - 2 - j)] = a[j].clone() / a0.clone();
    }
    Ok(CompanionMatrix { kind: CompanionKind::X, entries: x, shape: None, source_degree: n })
}
