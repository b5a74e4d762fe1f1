//! Simultaneous root finding by Aberth–Ehrlich iteration in `f64`.
//! Independent of every companion construction it is used to check.

use num::Complex;
use serde::{Deserialize, Serialize};

use crate::bounds::cauchy_bound;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

pub const MAX_ITERATIONS: usize = 500;
pub const DEFAULT_TOLERANCE: f64 = 1e-14;
/// Roots closer than this (relative) are reported as one cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    #[serde(with = "pairs")]
    pub roots: Vec<Complex<f64>>,
    pub residuals: Vec<f64>,
    pub converged: bool,
}

mod pairs {
    use num::Complex;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex<f64>], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex<f64>>, D::Error> {
        Ok(Vec::<[f64; 2]>::deserialize(d)?.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
    }
}

impl RootSet {
    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Smallest modulus among roots that are not exactly zero.
    pub fn min_nonzero_modulus(&self) -> Option<f64> {
        self.roots.iter().map(|z| z.norm()).filter(|&r| r > 0.0).reduce(f64::min)
    }

    /// Groups roots within [`CLUSTER_TOLERANCE`] relative distance.
    pub fn clusters(&self) -> Vec<(Complex<f64>, usize)> {
        let mut out: Vec<(Complex<f64>, usize)> = Vec::new();
        for z in &self.roots {
            let hit = out
                .iter_mut()
                .find(|(c, _)| (z - *c).norm() <= CLUSTER_TOLERANCE * z.norm().max(c.norm()).max(1.0));
            match hit {
                Some((c, k)) => {
                    *c = (*c * *k as f64 + z) / (*k as f64 + 1.0);
                    *k += 1;
                }
                None => out.push((*z, 1)),
            }
        }
        out
    }
}

/// `p(z)` and `p'(z)` by Horner, monic leading term included.
fn eval_with_derivative(coeffs: &[f64], z: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
    let mut p = Complex::new(1.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `|p(z)|` below the rounding error of Horner's scheme at `z`.
fn at_rounding_level(coeffs: &[f64], z: Complex<f64>) -> bool {
    let r = z.norm();
    let scale = coeffs.iter().rev().fold(1.0, |acc, c| acc * r + c.abs());
    let (p, _) = eval_with_derivative(coeffs, z);
    p.norm() <= 8.0 * f64::EPSILON * (coeffs.len() as f64 + 1.0) * scale
}

fn aberth(coeffs: &[f64], radius: f64, offset: f64, tol: f64) -> (Vec<Complex<f64>>, bool) {
    let n = coeffs.len();
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + offset;
            Complex::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p == Complex::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<f64> = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            worst = worst.max(step.norm() / z[i].norm().max(1.0));
        }
        if worst < tol || z.iter().all(|&zi| at_rounding_level(coeffs, zi)) {
            return (z, true);
        }
    }
    (z, false)
}

fn polish(coeffs: &[f64], z: &mut [Complex<f64>]) {
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(coeffs, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *zi - p / dp;
            let (pc, _) = eval_with_derivative(coeffs, cand);
            if pc.norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
}

/// All `n` roots of `p`. Zero roots are split off exactly first; the rest
/// are found from equispaced starts on a circle of radius `0.9` times the
/// Cauchy bound, retrying with a few different angular offsets.
pub fn find_roots<T: Scalar>(p: &Polynomial<T>, tol: f64) -> Result<RootSet> {
    let pf = p.to_f64();
    let (q, zeros) = match pf.strip_zero_roots() {
        Ok(split) => split,
        Err(Error::AllRootsZero) => {
            return Ok(RootSet {
                roots: vec![Complex::new(0.0, 0.0); pf.degree()],
                residuals: vec![0.0; pf.degree()],
                converged: true,
            })
        }
        Err(e) => return Err(e),
    };
    let coeffs = q.coeffs().to_vec();
    let mut roots = if coeffs.len() == 1 {
        vec![Complex::new(-coeffs[0], 0.0)]
    } else {
        let radius = 0.9 * cauchy_bound(&q);
        let attempt =
            [0.4, 1.1, 2.3].iter().map(|&offset| aberth(&coeffs, radius, offset, tol)).find(|(_, ok)| *ok);
        match attempt {
            Some((mut z, _)) => {
                polish(&coeffs, &mut z);
                z
            }
            None => return Err(Error::NoConvergence { iterations: MAX_ITERATIONS }),
        }
    };
    roots.extend(std::iter::repeat_n(Complex::new(0.0, 0.0), zeros));
    let full = pf.coeffs().to_vec();
    let residuals = roots.iter().map(|&z| eval_with_derivative(&full, z).0.norm()).collect();
    Ok(RootSet { roots, residuals, converged: true })
}

pub fn max_root_modulus<T: Scalar>(p: &Polynomial<T>) -> Result<f64> {
    Ok(find_roots(p, DEFAULT_TOLERANCE)?.max_modulus())
}

/// `None` when every root is zero.
pub fn min_nonzero_root_modulus<T: Scalar>(p: &Polynomial<T>) -> Result<Option<f64>> {
    Ok(find_roots(p, DEFAULT_TOLERANCE)?.min_nonzero_modulus())
}
