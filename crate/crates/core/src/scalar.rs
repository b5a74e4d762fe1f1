//! Scalar abstraction shared by every construction and bound.
//!
//! Everything in the bound formulas is built from `abs`, `+`, `-`, `/`, and
//! comparisons, so the same code runs on `f32`, `f64`, and exact rationals.

use std::fmt::{Debug, Display};

use num::rational::Ratio;
use num::{BigInt, BigRational, FromPrimitive, Signed, ToPrimitive};

/// Field-like scalar usable for companion matrices and norm bounds.
pub trait Scalar:
    Clone + PartialOrd + Signed + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Margin used when a strict inequality is evaluated; exact types use zero.
    fn strict_margin() -> Self;

    /// True when every value is finite (always true for exact types).
    fn is_finite_value(&self) -> bool;

    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).unwrap_or_else(Self::zero)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_usize_exact(value: usize) -> Self {
        Self::from_usize(value).expect("usize fits every scalar type")
    }
}

impl Scalar for f64 {
    fn strict_margin() -> Self {
        1e-9
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn strict_margin() -> Self {
        1e-4
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

macro_rules! exact_scalar {
    ($($ty:ty),*) => {$(
        impl Scalar for $ty {
            fn strict_margin() -> Self {
                <$ty as num::Zero>::zero()
            }

            fn is_finite_value(&self) -> bool {
                true
            }
        }
    )*};
}

exact_scalar!(Ratio<i64>, Ratio<i128>, BigRational);

/// Larger of two partially ordered values; the first wins ties.
pub(crate) fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Smaller of two partially ordered values; the first wins ties.
pub(crate) fn min_of<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

/// `a < b` with the scalar's strict margin applied.
pub fn strictly_less<T: Scalar>(a: &T, b: &T) -> bool {
    a.clone() + T::strict_margin() < *b
}

/// `|a - b| <= margin`.
pub fn nearly_equal<T: Scalar>(a: &T, b: &T) -> bool {
    (a.clone() - b.clone()).abs() <= T::strict_margin()
}

#[allow(dead_code)]
pub(crate) fn big_rational_from_int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}
