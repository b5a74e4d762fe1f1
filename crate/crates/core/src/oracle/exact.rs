//! Exact characteristic polynomials of integer matrices: Bareiss
//! determinants of `xI - A` at integer points, then Lagrange interpolation
//! over the rationals.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Largest order accepted by the exact path.
pub const MAX_EXACT_ORDER: usize = 16;

/// Entry magnitude accepted by [`charpoly_exact_check`].
pub const MAX_EXACT_ENTRY: i64 = 1_000_000;

/// The entries as `i64`, or the first entry that is not an integer.
pub fn integer_entries<T: Scalar>(a: &Matrix<T>) -> Result<Vec<Vec<i64>>> {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    let v = &a[(i, j)];
                    v.to_i64()
                        .filter(|k| T::from_i64(*k).as_ref() == Some(v))
                        .ok_or(Error::NonIntegerEntry { row: i, col: j })
                })
                .collect()
        })
        .collect()
}

/// Fraction-free elimination in `i128`; `None` on overflow.
fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0)?;
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].checked_mul(m[k][k])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = num / prev;
            }
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].checked_mul(sign)
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// `det(xI - A)` for integer `x`, in `i128` with a `BigInt` retry.
pub fn det_shifted(a: &[Vec<i64>], x: i64) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let entry = |i: usize, j: usize| -> i128 {
        let d = if i == j { x as i128 } else { 0 };
        d - a[i][j] as i128
    };
    let small: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    match bareiss_i128(small.clone()) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(small.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()),
    }
}

/// `0, 1, -1, 2, -2, …`
fn sample_points(count: usize) -> Vec<i64> {
    (0..count as i64).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) }).collect()
}

/// Coefficients (ascending) of the unique degree `< len` polynomial through the points.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for j in 0..n {
        // basis numerator Π_{k≠j}(x - x_k), ascending coefficients
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (k, &xk) in xs.iter().enumerate() {
            if k == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from_integer(BigInt::from(xk));
            }
            basis = next;
            denom *= BigInt::from(xs[j] - xk);
        }
        let scale = BigRational::new(ys[j].clone(), denom);
        for (d, c) in basis.iter().enumerate() {
            out[d] += c * &scale;
        }
    }
    out
}

/// Ascending coefficients `c_0 … c_{n-1}` of `det(xI - A) = xⁿ + Σ c_i xⁱ`.
pub fn char_poly_integer(a: &[Vec<i64>]) -> Result<Vec<BigInt>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch("matrix is not square".into()));
    }
    if n > MAX_EXACT_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_EXACT_ORDER });
    }
    let xs = sample_points(n + 1);
    let ys: Vec<BigInt> = xs.iter().map(|&x| det_shifted(a, x)).collect();
    let coeffs = interpolate(&xs, &ys);
    debug_assert!(coeffs[n].is_one(), "characteristic polynomial is monic");
    Ok(coeffs[..n]
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect())
}

/// True when the exact characteristic polynomial of `c` is
/// `xⁿ + Σ expected[i] xⁱ`.
pub fn charpoly_exact_check<T: Scalar>(c: &Matrix<T>, expected: &[i64]) -> Result<bool> {
    let rows = integer_entries(c)?;
    let n = rows.len();
    if n > MAX_EXACT_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_EXACT_ORDER });
    }
    let too_big = |v: &i64| v.abs() > MAX_EXACT_ENTRY;
    if rows.iter().flatten().any(too_big) || expected.iter().any(too_big) {
        return Err(Error::Parse(format!("integer magnitude above {MAX_EXACT_ENTRY}")));
    }
    if expected.len() != n {
        return Ok(false);
    }
    let got = char_poly_integer(&rows)?;
    Ok(got
        .iter()
        .zip(expected)
        .all(|(g, e)| g.to_i64() == Some(*e) && g.abs() <= BigInt::from(MAX_EXACT_ENTRY)))
}
