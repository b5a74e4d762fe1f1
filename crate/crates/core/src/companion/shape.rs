//! Placement of coefficients inside the `K` block of the unit lower
//! Hessenberg form.
//!
//! A unit sparse companion matrix in Hessenberg form has ones on the whole
//! superdiagonal and holds `-a_{n-1-k}` somewhere on its `k`-th subdiagonal,
//! inside the `(n-m) × (m+1)` block `K` occupying rows `m+1..=n` and
//! columns `1..=m+1`. A [`ShapeSpec`] records the row (1-based) of that cell
//! for every subdiagonal.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_SHAPE_DEGREE: usize = 12;
pub const MAX_FIEDLER_DEGREE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ShapeRepr")]
pub struct ShapeSpec {
    n: usize,
    m: usize,
    pos: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeRepr {
    n: usize,
    m: usize,
    pos: Vec<usize>,
}

impl TryFrom<ShapeRepr> for ShapeSpec {
    type Error = Error;

    fn try_from(r: ShapeRepr) -> Result<Self> {
        ShapeSpec::new(r.n, r.m, r.pos)
    }
}

/// Inclusive row range allowed for subdiagonal `k` in the block with parameter `m`.
fn row_range(n: usize, m: usize, k: usize) -> (usize, usize) {
    ((m + 1).max(k + 1), n.min(k + m + 1))
}

impl ShapeSpec {
    pub fn new(n: usize, m: usize, pos: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ShapeMismatch("degree must be positive".into()));
        }
        if m >= n {
            return Err(Error::ShapeMismatch(format!("block parameter m={m} must be below n={n}")));
        }
        if pos.len() != n {
            return Err(Error::ShapeMismatch(format!("expected {n} rows, got {}", pos.len())));
        }
        for (k, &row) in pos.iter().enumerate() {
            let (lo, hi) = row_range(n, m, k);
            if row < lo || row > hi {
                return Err(Error::ShapeMismatch(format!(
                    "subdiagonal {k}: row {row} outside {lo}..={hi} for m={m}"
                )));
            }
        }
        Ok(ShapeSpec { n, m, pos })
    }

    /// Coefficients along the last row: the classical Frobenius layout.
    pub fn frobenius(n: usize) -> Self {
        ShapeSpec { n, m: n - 1, pos: vec![n; n] }
    }

    /// `L_b`: `a_0..a_b` in row `n`, `a_{b+1}..a_{n-1}` up column `b+1`.
    pub fn l_shape(n: usize, b: usize) -> Result<Self> {
        if b >= n {
            return Err(Error::IndexOutOfRange { index: b, min: 0, max: n.saturating_sub(1) });
        }
        Ok(ShapeSpec { n, m: b, pos: (0..n).map(|k| (b + 1 + k).min(n)).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pos(&self) -> &[usize] {
        &self.pos
    }

    /// 1-based `(row, col)` of the cell on subdiagonal `k`.
    pub fn cell(&self, k: usize) -> (usize, usize) {
        (self.pos[k], self.pos[k] - k)
    }

    /// 1-based `(row, col)` of the cell holding `-a_i`.
    pub fn coefficient_cell(&self, i: usize) -> (usize, usize) {
        self.cell(self.n - 1 - i)
    }

    pub fn is_frobenius(&self) -> bool {
        self.m == self.n - 1
    }

    /// Reflection across the antidiagonal (`R Cᵀ R`).
    pub fn flip(&self) -> Self {
        let n = self.n;
        let pos = self.pos.iter().enumerate().map(|(k, &r)| n + 1 + k - r).collect();
        ShapeSpec { n, m: n - 1 - self.m, pos }
    }

    /// The representative of `{self, self.flip()}` with the smaller row encoding.
    pub fn canonical(&self) -> Self {
        let f = self.flip();
        if f.pos < self.pos {
            f
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.pos <= self.flip().pos
    }

    /// Each coefficient cell is one step up or one step right of the
    /// previous one, starting from `a_0` at `(n, 1)`.
    pub fn is_fiedler(&self) -> bool {
        (1..self.n).all(|i| {
            let (r0, c0) = self.coefficient_cell(i - 1);
            let (r1, c1) = self.coefficient_cell(i);
            (r1 + 1 == r0 && c1 == c0) || (r1 == r0 && c1 == c0 + 1)
        })
    }

    /// True when no coefficient other than `a_0` sits in column 1 (the `u`
    /// block of the inverse partition is structurally zero).
    pub fn has_zero_u_block(&self) -> bool {
        (0..self.n - 1).all(|k| self.pos[k] - k != 1)
    }

    /// Uniformly random `m`, then a uniformly random row per subdiagonal.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let m = rng.gen_range(0..n);
        let pos = (0..n)
            .map(|k| {
                let (lo, hi) = row_range(n, m, k);
                rng.gen_range(lo..=hi)
            })
            .collect();
        ShapeSpec { n, m, pos }
    }
}

fn check_degree(n: usize, max: usize) -> Result<()> {
    if (2..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange { degree: n, min: 2, max })
    }
}

/// Lazily walks every shape of degree `n`, ordered by `m` then by row encoding.
pub struct ShapeIter {
    n: usize,
    m: usize,
    current: Option<Vec<usize>>,
}

impl ShapeIter {
    pub fn new(n: usize) -> Self {
        let mut it = ShapeIter { n, m: 0, current: None };
        if n > 0 {
            it.current = Some(it.first_for(0));
        }
        it
    }

    fn first_for(&self, m: usize) -> Vec<usize> {
        (0..self.n).map(|k| row_range(self.n, m, k).0).collect()
    }

    fn advance(&mut self) {
        let Some(pos) = self.current.as_mut() else { return };
        for k in (0..self.n).rev() {
            let (lo, hi) = row_range(self.n, self.m, k);
            if pos[k] < hi {
                pos[k] += 1;
                return;
            }
            pos[k] = lo;
        }
        self.m += 1;
        self.current = (self.m < self.n).then(|| self.first_for(self.m));
    }
}

impl Iterator for ShapeIter {
    type Item = ShapeSpec;

    fn next(&mut self) -> Option<ShapeSpec> {
        let pos = self.current.clone()?;
        let shape = ShapeSpec { n: self.n, m: self.m, pos };
        self.advance();
        Some(shape)
    }
}

/// Every unit sparse companion shape of degree `n`; with `dedup`, one
/// representative per antidiagonal-flip pair.
pub fn enumerate_shapes(n: usize, dedup: bool) -> Result<Vec<ShapeSpec>> {
    check_degree(n, MAX_SHAPE_DEGREE)?;
    Ok(ShapeIter::new(n).filter(|s| !dedup || s.is_canonical()).collect())
}

/// Number of shapes per `m`, computed as a product of per-subdiagonal choices.
pub fn shape_count(n: usize, m: usize) -> u128 {
    (0..n)
        .map(|k| {
            let (lo, hi) = row_range(n, m, k);
            (hi + 1 - lo) as u128
        })
        .product()
}

/// Fiedler shapes: lattice paths of up/right steps from `(n, 1)`.
pub fn enumerate_fiedler(n: usize) -> Result<Vec<ShapeSpec>> {
    check_degree(n, MAX_FIEDLER_DEGREE)?;
    let mut shapes: Vec<ShapeSpec> = (0u32..1 << (n - 1))
        .map(|steps| {
            // bit i set: a_{i+1} is one step right of a_i, else one step up.
            let mut cells = Vec::with_capacity(n);
            let (mut row, mut col) = (n, 1);
            cells.push((row, col));
            for i in 0..n - 1 {
                if steps >> i & 1 == 1 {
                    col += 1;
                } else {
                    row -= 1;
                }
                cells.push((row, col));
            }
            let m = steps.count_ones() as usize;
            let pos = (0..n).map(|k| cells[n - 1 - k].0).collect();
            ShapeSpec { n, m, pos }
        })
        .collect();
    // derived order: m first, then the row encoding
    shapes.sort();
    Ok(shapes)
}
