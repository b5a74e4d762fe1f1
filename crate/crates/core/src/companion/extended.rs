//! Companion matrices of `x^{t-1} p` built from a coefficient partition.

use super::{sparse_from_shape, CompanionKind, CompanionMatrix, ShapeSpec};
use crate::bounds::PartitionSpec;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Order `n+t-1` companion matrix of `x^{t-1} p` with `a_i`, `i ∈ P_j`, at
/// 1-based `(n+t-j, t+i-j+1)` once the parts are put in proof order. Its
/// ∞-norm is the partition bound `B_P`.
pub fn build_extended_companion<T: Scalar>(
    p: &Polynomial<T>,
    partition: &PartitionSpec,
) -> Result<CompanionMatrix<T>> {
    let n = p.degree();
    partition.validate(n)?;
    let parts = partition.ordered_parts();
    let t = parts.len();
    let order = n + t - 1;
    // the prepended zero coefficients sit in the last row
    let mut pos = vec![order; order];
    for (j0, part) in parts.iter().enumerate() {
        let j = j0 + 1;
        for &i in part {
            pos[n - 1 - i] = n + t - j;
        }
    }
    let shape = ShapeSpec::new(order, n - 1, pos)
        .map_err(|e| Error::InvalidPartition(format!("no valid placement: {e}")))?;
    let mut c = sparse_from_shape(&p.extend(t - 1), &shape)?;
    c.kind = CompanionKind::Extended;
    c.source_degree = n;
    Ok(c)
}
