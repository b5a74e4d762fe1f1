//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so every line is printed whatever the outcome.

mod common;

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootbound::bounds::{
    best_fiedler_bound, bound_from_matrix, frobenius_n, l_norm, lower_bound_reversal, partition_bound,
    w_bound, w_improves, x_bound, x_improves, ReversalStrategy,
};
use rootbound::companion::{
    build_extended_companion, char_poly, enumerate_fiedler, enumerate_shapes, inverse_sparse, l_matrix,
    sparse_from_shape, w_matrix, x_defining_shape, x_matrix,
};
use rootbound::oracle::charpoly_exact_check;
use rootbound::theorems::{self, CorpusConfig, Distribution};
use rootbound::{Matrix, PartitionSpec, Polynomial, ReportOptions, ShapeSpec};

/// Absolute tolerance for the worked-example values.
const TOL: f64 = 1e-9;
/// Deviation allowed from the identity in inverse products.
const IDENTITY_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn poly(c: &[f64]) -> Polynomial<f64> {
    Polynomial::new(c.to_vec()).unwrap()
}

fn expect(what: &str, got: f64, want: f64) -> Result<(), String> {
    if (got - want).abs() <= TOL {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want}"))
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn worked_examples() -> Outcome {
    let e = |r: rootbound::Result<f64>| r.map_err(|e| e.to_string());

    let p41 = poly(&[-0.1, -0.1, -0.1, -0.5, -0.1, -0.3, -0.1, -0.1]);
    let table = [1.5, 1.5, 1.5, 1.3, 1.3, 1.2, 1.3, 1.4];
    for (b, want) in table.iter().enumerate() {
        expect(&format!("‖L_{b}‖"), l_matrix(&p41, b).unwrap().norm_inf(), *want)?;
        expect(&format!("closed-form ‖L_{b}‖"), e(l_norm(&p41, b))?, *want)?;
    }
    let (v, r) = best_fiedler_bound(&p41).map_err(|e| e.to_string())?;
    ensure(r == 5, || format!("best Fiedler index {r}, want 5"))?;
    expect("best Fiedler bound", v, 1.2)?;

    let p51 = poly(&[-3.0, -2.0, -4.0, -1.0, -2.0, -1.0]);
    expect("N(F) quintic-plus-one", frobenius_n(&p51), 5.0)?;
    let spec51 = PartitionSpec::new(vec![vec![2], vec![0], vec![1, 3], vec![4, 5]], 0).unwrap();
    let c51 = build_extended_companion(&p51, &spec51).map_err(|e| e.to_string())?;
    ensure(c51.order() == 9, || format!("extended order {}", c51.order()))?;
    expect("‖C(x³p)‖∞", c51.norm_inf(), 4.0)?;
    let cp = char_poly(&c51.entries).map_err(|e| e.to_string())?;
    let want: Vec<f64> = p51.extend(3).coeffs().to_vec();
    ensure(cp.iter().zip(&want).all(|(g, w)| (g - w).abs() <= TOL), || "extended char poly".into())?;

    let p52 = poly(&[-3.0, -5.0, -3.0, -4.0, -2.0, -2.0, -3.0, -1.0]);
    let spec52 =
        PartitionSpec::new(vec![vec![0, 7], vec![1], vec![2], vec![3], vec![4], vec![5], vec![6]], 1)
            .unwrap();
    expect("B_P octic (a)", e(partition_bound(&p52, &spec52))?, 5.0)?;
    expect("N(F) octic (a)", frobenius_n(&p52), 6.0)?;
    let p53 = poly(&[-1.0, -3.0, -5.0, -1.0, -6.0, -1.0, -3.0, -1.0]);
    let spec53 = PartitionSpec::new(vec![vec![4], vec![2], vec![0, 5, 6], vec![1, 3, 7]], 0).unwrap();
    expect("B_P octic (b)", e(partition_bound(&p53, &spec53))?, 6.0)?;
    expect("N(F) octic (b)", frobenius_n(&p53), 7.0)?;

    let p61 = poly(&[-5.0, -1.0, -5.0, -4.0, -10.0, -3.0]);
    expect(
        "Frobenius lower bound",
        e(lower_bound_reversal(&p61, ReversalStrategy::FrobeniusOnly))?,
        1.0 / 3.0,
    )?;
    let shown = ShapeSpec::new(6, 2, vec![3, 3, 4, 6, 5, 6]).unwrap();
    let c61 = sparse_from_shape(&p61.reversal().unwrap(), &shown).unwrap();
    expect("sparse lower bound", 1.0 / bound_from_matrix(&c61), 5.0 / 11.0)?;

    let p62 = poly(&[-0.2, -2.0, -5.0, -6.0, -2.0, -1.0, -4.0]);
    expect("N(F) septic", frobenius_n(&p62), 7.0)?;
    let shown = ShapeSpec::new(7, 3, vec![4, 4, 6, 7, 5, 6, 7]).unwrap();
    expect("displayed sparse bound", bound_from_matrix(&sparse_from_shape(&p62, &shown).unwrap()), 6.2)?;
    expect(
        "reversal lower bound",
        e(lower_bound_reversal(&p62, ReversalStrategy::FrobeniusOnly))?,
        1.0 / 31.0,
    )?;

    let pw = poly(&[-6.0, 18.0, 36.0, 6.0, 12.0, -1.0]);
    let (w, f) = (e(w_bound(&pw))?, frobenius_n(&pw));
    expect("‖W‖∞ gap example", w, 7.0)?;
    expect("N(F) gap example", f, 37.0)?;
    expect("gap", f - w, 30.0)?;
    expect("ratio", f / w, 37.0 / 7.0)?;

    let p81 = poly(&[5.0, -5.0, -10.0, 20.0, 17.0, 1.0, -1.0, 4.0]);
    expect("N(F) octic (c)", frobenius_n(&p81), 21.0)?;
    expect("‖W‖∞ octic (c)", e(w_bound(&p81))?, 9.0)?;
    expect("‖X_5‖₁", e(x_bound(&p81, 5))?, 5.0)?;
    ensure(w_improves(&p81).unwrap() && x_improves(&p81, 5).unwrap(), || "improvement predicates".into())?;
    for b in 1..=6 {
        let xb = e(x_bound(&p81, b))?;
        ensure(xb >= 5.0 - TOL, || format!("‖X_{b}‖₁ = {xb} below ‖X_5‖₁"))?;
    }
    Ok("7 worked examples reproduced".into())
}

fn soundness() -> Outcome {
    let config = CorpusConfig {
        degrees: (3..=10).collect(),
        samples: 125,
        distributions: vec![Distribution::Uniform(5.0)],
        seed: 2024,
    };
    let r = theorems::soundness_sweep(&config, &ReportOptions::default());
    ensure(r.trials == 1000, || format!("{} polynomials, want 1000", r.trials))?;
    match r.violations.first() {
        None => Ok(format!("{} polynomials, 0 violations", r.trials)),
        Some(v) => Err(format!("{} violations, first {} {:?}", r.violations.len(), v.label, v.observed)),
    }
}

fn structural() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for n in 2..=7 {
        let shapes = enumerate_shapes(n, false).map_err(|e| e.to_string())?;
        for s in &shapes {
            for _ in 0..3 {
                let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
                let p = Polynomial::new(coeffs.iter().map(|&c| c as f64).collect()).unwrap();
                let c = sparse_from_shape(&p, s).unwrap();
                let ok = charpoly_exact_check(&c.entries, &coeffs).map_err(|e| e.to_string())?;
                ensure(ok, || format!("char poly mismatch for {s:?} at {coeffs:?}"))?;
                checked += 1;
            }
        }
        for f in enumerate_fiedler(n).map_err(|e| e.to_string())? {
            ensure(shapes.contains(&f), || format!("Fiedler shape {f:?} not enumerated"))?;
        }
    }
    let brute = common::brute_force_placements(3, 4, &mut rng).len();
    let listed = enumerate_shapes(3, false).unwrap().len();
    ensure(brute == listed, || format!("brute force finds {brute} shapes at n=3, enumeration {listed}"))?;
    Ok(format!("{checked} exact checks, n=3 count {listed} matches brute force"))
}

fn theorem_suite() -> Outcome {
    let results = theorems::run_all(&CorpusConfig::default());
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} ({} of {} polynomials)", r.theorem_id, r.violations.len(), r.trials))
        .collect();
    let vacuous: Vec<&str> =
        results.iter().filter(|r| r.is_vacuous()).map(|r| r.theorem_id.as_str()).collect();
    if !failed.is_empty() {
        return Err(format!("violations in {}", failed.join(", ")));
    }
    ensure(vacuous.is_empty(), || format!("vacuous: {}", vacuous.join(", ")))?;
    Ok(format!("{} properties, 0 violations", results.len()))
}

fn deviation(m: &Matrix<f64>) -> f64 {
    m.max_abs_diff(&Matrix::identity(m.rows()))
}

fn inverse_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut products = 0;
    for n in 2..=7 {
        for s in enumerate_shapes(n, false).unwrap() {
            for _ in 0..2 {
                let p = common::random_invertible_poly(n, 9, &mut rng);
                let c = sparse_from_shape(&p, &s).unwrap();
                let inv = inverse_sparse(&c).map_err(|e| e.to_string())?;
                let d = deviation(&c.entries.mul(&inv.entries));
                ensure(d <= IDENTITY_TOL, || format!("C·C⁻¹ deviates by {d} for {s:?}"))?;
                products += 1;
            }
        }
    }
    for n in 3..=10 {
        for _ in 0..5 {
            let p = common::random_invertible_poly(n, 9, &mut rng);
            let rev = p.reversal().unwrap();
            let l1 = l_matrix(&rev, 1).unwrap();
            let d = deviation(&w_matrix(&p).unwrap().entries.mul(&l1.entries));
            ensure(d <= IDENTITY_TOL, || format!("W·L_1(p♯) deviates by {d}"))?;
            for b in 1..=n - 2 {
                let e = sparse_from_shape(&rev, &x_defining_shape(n, b).unwrap()).unwrap();
                let d = deviation(&x_matrix(&p, b).unwrap().entries.mul(&e.entries));
                ensure(d <= IDENTITY_TOL, || format!("X_{b}·E deviates by {d}"))?;
            }
            products += n - 1;
        }
    }
    Ok(format!("{products} identity products"))
}

fn ratio_scaling() -> Outcome {
    let mut ratios = Vec::new();
    for m in 1..=3 {
        let hits = theorems::ratio_family_search::<f64>(m);
        let first = hits.first().ok_or_else(|| format!("no witness for m={m}"))?;
        let want = theorems::expected_ratio::<f64>(m);
        ensure((first.ratio() - want).abs() <= TOL * want, || format!("m={m}: ratio {}", first.ratio()))?;
        let exact = theorems::ratio_family_search::<BigRational>(m);
        ensure(exact.first().map(|w| w.ratio()) == Some(theorems::expected_ratio::<BigRational>(m)), || {
            format!("m={m}: exact ratio mismatch")
        })?;
        ratios.push(first.ratio());
    }
    ensure(ratios.windows(2).all(|w| w[1] > w[0]), || "ratios do not grow".into())?;
    Ok(format!("ratios {:.4}, {:.4}, {:.4}", ratios[0], ratios[1], ratios[2]))
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("worked-example regression", worked_examples),
        ("soundness sweep", soundness),
        ("structural oracle", structural),
        ("theorem suite", theorem_suite),
        ("inverse identities", inverse_identities),
        ("ratio family scaling", ratio_scaling),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
