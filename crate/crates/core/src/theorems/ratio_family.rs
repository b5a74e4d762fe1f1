//! Constructive search for quartics where `W` and `X_1` beat the Frobenius
//! bound by an unbounded factor.

use serde::Serialize;

use crate::bounds::{frobenius_n, w_bound, x_bound};
use crate::poly::Polynomial;
use crate::scalar::{nearly_equal, Scalar};

/// A quartic with `‖X_1‖_1 = ‖W‖_∞ = 1+10^m` and `N(F) = 1+10^{2m}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioWitness<T> {
    pub m: u32,
    pub coeffs: Vec<T>,
    pub w_norm: T,
    pub x1_norm: T,
    pub frobenius: T,
}

impl<T: Scalar> RatioWitness<T> {
    pub fn ratio(&self) -> T {
        self.frobenius.clone() / self.w_norm.clone()
    }
}

/// `(1+10^{2m}) / (1+10^m)`.
pub fn expected_ratio<T: Scalar>(m: u32) -> T {
    let t = T::from_u64(10u64.pow(m)).expect("fits");
    (T::one() + t.clone() * t.clone()) / (T::one() + t)
}

/// Every quartic with coefficients drawn from `{0, 1, 10^m, 10^{2m}}`
/// (nonzero constant term) that hits the target norms, in lexicographic
/// order of `(a_0, a_1, a_2, a_3)`.
pub fn ratio_family_search<T: Scalar>(m: u32) -> Vec<RatioWitness<T>> {
    assert!((1..=9).contains(&m), "10^(2m) must fit in u64");
    let ten_m = T::from_u64(10u64.pow(m)).expect("fits");
    let slots = [T::zero(), T::one(), ten_m.clone(), ten_m.clone() * ten_m.clone()];
    let target_w = T::one() + ten_m.clone();
    let target_f = T::one() + ten_m.clone() * ten_m;
    let mut hits = Vec::new();
    for code in 0..slots.len().pow(4) {
        let coeffs: Vec<T> = (0..4).map(|i| slots[code / 4usize.pow(3 - i) % 4].clone()).collect();
        if coeffs[0].is_zero() {
            continue;
        }
        let p = Polynomial::new(coeffs.clone()).expect("finite");
        let (Ok(w), Ok(x1)) = (w_bound(&p), x_bound(&p, 1)) else { continue };
        let f = frobenius_n(&p);
        if nearly_equal(&w, &target_w) && nearly_equal(&x1, &target_w) && nearly_equal(&f, &target_f) {
            hits.push(RatioWitness { m, coeffs, w_norm: w, x1_norm: x1, frobenius: f });
        }
    }
    hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    #[test]
    fn family_found_for_small_m() {
        for m in 1..=3 {
            let hits = ratio_family_search::<f64>(m);
            assert!(!hits.is_empty(), "m={m}");
            for h in &hits {
                assert!((h.ratio() - expected_ratio::<f64>(m)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_search_agrees() {
        let exact = ratio_family_search::<BigRational>(2);
        let float = ratio_family_search::<f64>(2);
        assert_eq!(exact.len(), float.len());
        assert_eq!(exact[0].ratio(), expected_ratio::<BigRational>(2));
    }

    #[test]
    fn ratio_grows_without_bound() {
        let r: Vec<f64> = (1..=4).map(expected_ratio::<f64>).collect();
        assert!(r.windows(2).all(|w| w[1] > 5.0 * w[0]));
    }
}
