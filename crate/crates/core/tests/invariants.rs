use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rootbound::bounds::{
    best_sparse, frobenius_n, lower_bound_reversal, partition_bound, search_partition, w_bound,
    w_norm_closed_form, x_bound, x_norm_closed_form, ReversalStrategy, SearchMode,
};
use rootbound::companion::{build_extended_companion, inverse_sparse, sparse_from_shape};
use rootbound::oracle::{find_roots, DEFAULT_TOLERANCE};
use rootbound::{bound_report, BoundReport64, Matrix, PartitionSpec, Polynomial, ReportOptions, ShapeSpec};

const SLACK: f64 = 1e-8;

fn coeffs(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    n.prop_flat_map(|n| prop::collection::vec(-6.0f64..6.0, n))
}

fn invertible(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Polynomial<f64>> {
    coeffs(n).prop_filter("nonzero constant", |c| c[0].abs() > 1e-3).prop_map(|c| Polynomial::new(c).unwrap())
}

fn poly_and_shape(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Polynomial<f64>, ShapeSpec)> {
    (invertible(n), any::<u64>()).prop_map(|(p, seed)| {
        let s = ShapeSpec::random(p.degree(), &mut ChaCha8Rng::seed_from_u64(seed));
        (p, s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn every_bound_encloses_the_roots(c in coeffs(1..=8)) {
        let p = Polynomial::new(c).unwrap();
        let report = bound_report(&p, &ReportOptions::default()).unwrap();
        let roots = find_roots(&p, DEFAULT_TOLERANCE).unwrap();
        for e in report.upper_bounds() {
            prop_assert!(roots.max_modulus() <= e.value + SLACK, "{}", e.source_tag());
        }
        if let Some(min) = roots.min_nonzero_modulus() {
            for e in report.lower_bounds() {
                prop_assert!(e.value <= min + SLACK, "{}", e.source_tag());
            }
        }
    }

    #[test]
    fn best_upper_is_the_minimum(c in coeffs(2..=7)) {
        let r = bound_report(&Polynomial::new(c).unwrap(), &ReportOptions::default()).unwrap();
        prop_assert!(r.upper_bounds().all(|e| r.best_upper.value <= e.value));
        prop_assert!(r.best_upper.value <= r.value("frobenius").unwrap());
        if let Some(l) = &r.best_lower {
            prop_assert!(r.lower_bounds().all(|e| e.value <= l.value));
        }
    }

    #[test]
    fn sparse_gain_is_bounded(p in invertible(2..=7)) {
        let f = frobenius_n(&p);
        let (best, _) = best_sparse(&p).unwrap();
        prop_assert!(best <= f);
        prop_assert!(f < 2.0 * best);
        prop_assert!(f - best <= 1.0 + SLACK);
    }

    #[test]
    fn flip_preserves_norm_bound((p, s) in poly_and_shape(2..=9)) {
        let a = sparse_from_shape(&p, &s).unwrap().n_min();
        let b = sparse_from_shape(&p, &s.flip()).unwrap().n_min();
        // same multiset of row/column sums, summed in a different order
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        prop_assert_eq!(s.flip().flip(), s);
    }

    #[test]
    fn inverse_is_exact_on_the_identity((p, s) in poly_and_shape(2..=9)) {
        let c = sparse_from_shape(&p, &s).unwrap();
        let inv = inverse_sparse(&c).unwrap();
        let d = c.entries.mul(&inv.entries).max_abs_diff(&Matrix::identity(c.order()));
        prop_assert!(d < 1e-8 * (1.0 + p.max_abs_coeff() / p.constant_term().abs()).powi(2), "{d}");
    }

    #[test]
    fn reversal_bounds_invert(p in invertible(2..=7)) {
        let lower = lower_bound_reversal(&p, ReversalStrategy::FrobeniusOnly).unwrap();
        prop_assert!((lower * frobenius_n(&p.reversal().unwrap()) - 1.0).abs() < 1e-12);
        let best = lower_bound_reversal(&p, ReversalStrategy::BestSparse).unwrap();
        prop_assert!(best >= lower - 1e-15);
    }

    #[test]
    fn closed_forms_match_dense(p in invertible(3..=10)) {
        let (w, wc) = (w_bound(&p).unwrap(), w_norm_closed_form(&p).unwrap());
        prop_assert!((w - wc).abs() <= 1e-9 * w.max(1.0));
        for b in 1..=p.degree() - 2 {
            let (x, xc) = (x_bound(&p, b).unwrap(), x_norm_closed_form(&p, b).unwrap());
            prop_assert!((x - xc).abs() <= 1e-9 * x.max(1.0));
        }
    }

    #[test]
    fn partition_bound_is_extended_norm(p in invertible(2..=7), seed in any::<u64>()) {
        let n = p.degree();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_partition(n, &mut rng);
        let b = partition_bound(&p, &spec).unwrap();
        let ext = build_extended_companion(&p, &spec).unwrap();
        prop_assert!((b - ext.norm_inf()).abs() <= 1e-12 * b.max(1.0));
        let (_, best) = search_partition(&p, SearchMode::Exhaustive).unwrap();
        prop_assert!(best <= b + 1e-12);
        prop_assert!(best <= frobenius_n(&p) + 1e-12);
    }

    #[test]
    fn report_json_round_trip(c in coeffs(1..=7)) {
        let r = bound_report(&Polynomial::new(c).unwrap(), &ReportOptions::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: BoundReport64 = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, r);
    }
}

/// Random set partition with the admissible `P_1` of smallest maximum.
fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> PartitionSpec {
    use rand::Rng;
    let t = rng.gen_range(1..=n);
    let mut labels: Vec<usize> = (0..n).map(|i| if i < t { i } else { rng.gen_range(0..t) }).collect();
    use rand::seq::SliceRandom;
    labels.shuffle(rng);
    let mut parts = vec![Vec::new(); t];
    for (i, l) in labels.into_iter().enumerate() {
        parts[l].push(i);
    }
    let p1 = (0..t).min_by_key(|&j| parts[j].iter().max().copied()).unwrap();
    PartitionSpec::new(parts, p1).unwrap()
}
