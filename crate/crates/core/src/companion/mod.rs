//! Unit sparse companion matrices in Hessenberg form, the Fiedler and `L_b`
//! subfamilies, extended-polynomial constructions, and inverse forms.

mod extended;
mod inverse;
mod shape;

use serde::{Deserialize, Serialize};

pub use extended::build_extended_companion;
pub use inverse::{ec_partition, inverse_sparse, w_matrix, x_defining_shape, x_matrix, ECPartition};
pub use shape::{
    enumerate_fiedler, enumerate_shapes, shape_count, ShapeIter, ShapeSpec, MAX_FIEDLER_DEGREE,
    MAX_SHAPE_DEGREE,
};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oracle::exact;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Largest order accepted by [`char_poly`].
pub const MAX_CHARPOLY_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompanionKind {
    Frobenius,
    Fiedler,
    Sparse,
    W,
    X,
    InverseSparse,
    Extended,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct CompanionMatrix<T> {
    pub kind: CompanionKind,
    #[serde(rename = "rows")]
    pub entries: Matrix<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeSpec>,
    /// Degree of the polynomial the construction started from; differs from
    /// the order for [`CompanionKind::Extended`].
    pub source_degree: usize,
}

impl<T: Scalar> CompanionMatrix<T> {
    pub fn order(&self) -> usize {
        self.entries.rows()
    }

    pub fn norm_inf(&self) -> T {
        self.entries.norm_inf()
    }

    pub fn norm_one(&self) -> T {
        self.entries.norm_one()
    }

    pub fn n_min(&self) -> T {
        self.entries.n_min()
    }
}

fn require_degree<T: Scalar>(p: &Polynomial<T>, min: usize) -> Result<usize> {
    let n = p.degree();
    if n < min {
        Err(Error::DegreeTooSmall { degree: n, min })
    } else {
        Ok(n)
    }
}

/// Superdiagonal ones plus `-a_{n-1-k}` at `(pos[k], pos[k]-k)`.
pub fn sparse_from_shape<T: Scalar>(p: &Polynomial<T>, s: &ShapeSpec) -> Result<CompanionMatrix<T>> {
    let n = p.degree();
    if s.n() != n {
        return Err(Error::ShapeMismatch(format!("shape has degree {}, polynomial {n}", s.n())));
    }
    let mut entries = Matrix::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        entries[(i, i + 1)] = T::one();
    }
    for i in 0..n {
        let (row, col) = s.coefficient_cell(i);
        entries[(row - 1, col - 1)] = -p.coeffs()[i].clone();
    }
    let kind = if s.is_frobenius() {
        CompanionKind::Frobenius
    } else if s.is_fiedler() {
        CompanionKind::Fiedler
    } else {
        CompanionKind::Sparse
    };
    Ok(CompanionMatrix { kind, entries, shape: Some(s.clone()), source_degree: n })
}

/// The classical companion matrix: superdiagonal ones, last row `-a_0 … -a_{n-1}`.
pub fn frobenius<T: Scalar>(p: &Polynomial<T>) -> Result<CompanionMatrix<T>> {
    let n = require_degree(p, 2)?;
    sparse_from_shape(p, &ShapeSpec::frobenius(n))
}

/// The Fiedler matrix `L_b`; `L_{n-1}` is the Frobenius matrix.
pub fn l_matrix<T: Scalar>(p: &Polynomial<T>, b: usize) -> Result<CompanionMatrix<T>> {
    let n = require_degree(p, 2)?;
    sparse_from_shape(p, &ShapeSpec::l_shape(n, b)?)
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev–LeVerrier
/// recurrence, returned as ascending coefficients with the monic leading
/// term implicit. Exact when `T` is a rational type.
pub fn char_poly<T: Scalar>(a: &Matrix<T>) -> Result<Vec<T>> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    if n > MAX_CHARPOLY_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_CHARPOLY_ORDER });
    }
    let mut coeffs = vec![T::zero(); n];
    let mut lead = T::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(A M_k) / k
        let mut next = a.mul(&m);
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + lead.clone();
        }
        let c = -(a.mul(&next).trace()) / T::from_usize_exact(k);
        coeffs[n - k] = c.clone();
        lead = c;
        m = next;
    }
    Ok(coeffs)
}

/// Exact characteristic polynomial of an integer-valued matrix via
/// fraction-free determinants at integer points.
pub fn char_poly_exact<T: Scalar>(a: &Matrix<T>) -> Result<Vec<num::BigInt>> {
    exact::char_poly_integer(&exact::integer_entries(a)?)
}
