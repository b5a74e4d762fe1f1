//! Monic polynomials `p(x) = xⁿ + a_{n-1}xⁿ⁻¹ + … + a_1x + a_0`.
//!
//! Only the `n` lower coefficients are stored, in ascending order; the
//! leading one is implicit.

use num::{Complex, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{max_of, nearly_equal, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialRepr<T>", into = "MonicRepr<T>")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

/// Summary of the tail coefficients `a_1, …, a_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailStats<T> {
    /// `M`: largest modulus among `a_1..a_{n-1}`.
    pub max_modulus: T,
    /// `u`: how many tail coefficients attain `M`.
    pub count: usize,
    /// `m`: largest index attaining `M`.
    pub last_index: usize,
}

impl<T: Scalar> Polynomial<T> {
    /// Monic polynomial from `[a_0, …, a_{n-1}]`.
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite_value()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(Polynomial { coeffs })
    }

    /// Normalizes ascending coefficients `[c_0, …, c_n]` by the leading one.
    pub fn make_monic(full: &[T]) -> Result<Self> {
        if full.len() < 2 {
            return Err(Error::DegreeTooSmall { degree: full.len().saturating_sub(1), min: 1 });
        }
        let lead = full[full.len() - 1].clone();
        if !lead.is_finite_value() {
            return Err(Error::NonFiniteCoefficient { index: full.len() - 1 });
        }
        if lead.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Self::new(full[..full.len() - 1].iter().map(|c| c.clone() / lead.clone()).collect())
    }

    /// `xⁿ`, all roots at the origin.
    pub fn monomial(degree: usize) -> Self {
        assert!(degree >= 1);
        Polynomial { coeffs: vec![T::zero(); degree] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `a_i` for `i < n`, and the implicit leading `1` for `i == n`.
    pub fn coeff(&self, i: usize) -> T {
        if i == self.degree() {
            T::one()
        } else {
            self.coeffs[i].clone()
        }
    }

    /// Ascending coefficients including the leading `1`.
    pub fn full_coeffs(&self) -> Vec<T> {
        let mut full = self.coeffs.clone();
        full.push(T::one());
        full
    }

    pub fn abs_coeffs(&self) -> Vec<T> {
        self.coeffs.iter().map(Signed::abs).collect()
    }

    pub fn constant_term(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map(Scalar::to_f64_lossy)
    }

    /// Monic reversal `p♯(x) = xⁿ p(1/x) / a_0`; its roots are the
    /// reciprocals of the roots of `p`.
    pub fn reversal(&self) -> Result<Self> {
        let a0 = self.constant_term().clone();
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.degree();
        // degree-k coefficient of p♯ is a_{n-k} / a_0, with a_n = 1.
        let coeffs = (0..n).map(|k| self.coeff(n - k) / a0.clone()).collect();
        Ok(Polynomial { coeffs })
    }

    /// Factors out `xˢ` where `s` counts the leading zero coefficients.
    pub fn strip_zero_roots(&self) -> Result<(Self, usize)> {
        let s = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if s == self.degree() {
            return Err(Error::AllRootsZero);
        }
        Ok((Polynomial { coeffs: self.coeffs[s..].to_vec() }, s))
    }

    /// `x^q · p`.
    pub fn extend(&self, q: usize) -> Self {
        let mut coeffs = vec![T::zero(); q];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Horner evaluation at a complex point.
    pub fn evaluate(&self, z: &Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::new(T::one(), T::zero()), |acc, c| {
            acc * z.clone() + Complex::new(c.clone(), T::zero())
        })
    }

    /// Largest coefficient modulus `max |a_i|` over all `i < n`.
    pub fn max_abs_coeff(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| max_of(acc, c.abs()))
    }

    /// `M`, `u`, and `m` for the tail `a_1..a_{n-1}`. Ties are decided with
    /// the scalar's strict margin.
    pub fn tail_stats(&self) -> Result<TailStats<T>> {
        let n = self.degree();
        if n < 2 {
            return Err(Error::DegreeTooSmall { degree: n, min: 2 });
        }
        let max_modulus = self.coeffs[1..].iter().fold(T::zero(), |acc, c| max_of(acc, c.abs()));
        let attaining: Vec<usize> =
            (1..n).filter(|&k| nearly_equal(&self.coeffs[k].abs(), &max_modulus)).collect();
        Ok(TailStats {
            max_modulus,
            count: attaining.len(),
            last_index: *attaining.last().expect("the maximum is attained"),
        })
    }
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum PolynomialRepr<T> {
    Monic { coeffs: Vec<T> },
    Full { full: Vec<T> },
}

#[derive(Serialize)]
struct MonicRepr<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TryFrom<PolynomialRepr<T>> for Polynomial<T> {
    type Error = Error;

    fn try_from(repr: PolynomialRepr<T>) -> Result<Self> {
        match repr {
            PolynomialRepr::Monic { coeffs } => Polynomial::new(coeffs),
            PolynomialRepr::Full { full } => Polynomial::make_monic(&full),
        }
    }
}

impl<T: Scalar> From<Polynomial<T>> for MonicRepr<T> {
    fn from(p: Polynomial<T>) -> Self {
        MonicRepr { coeffs: p.coeffs }
    }
}
