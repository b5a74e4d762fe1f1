//! Bounds on the moduli of polynomial roots from unit sparse companion
//! matrices, with independent oracles and a theorem-checking harness.
//!
//! The core is generic over [`Scalar`]: `f64`, `f32` and exact rationals
//! all run through the same constructions and bound formulas.

pub mod bounds;
pub mod companion;
mod error;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod theorems;

pub use bounds::{bound_report, BoundReport, PartitionSpec, ReportOptions};
pub use companion::{CompanionKind, CompanionMatrix, ShapeSpec};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::{Polynomial, TailStats};
pub use scalar::Scalar;

pub use num::BigRational;

/// Exact rationals over `i64`.
pub type Rational64 = num::rational::Ratio<i64>;

pub type Polynomial64 = Polynomial<f64>;
pub type Polynomial32 = Polynomial<f32>;
pub type RationalPolynomial = Polynomial<BigRational>;
pub type Matrix64 = Matrix<f64>;
pub type RationalMatrix = Matrix<BigRational>;
pub type CompanionMatrix64 = CompanionMatrix<f64>;
pub type BoundReport64 = BoundReport<f64>;
