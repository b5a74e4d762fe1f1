//! Seeded polynomial corpora for the property harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;

/// How non-constant coefficients are drawn. The constant term always comes
/// from one of three bands, `|a_0| < 1`, `= 1` or `> 1`, in rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distribution {
    /// Uniform on `[-a, a]`.
    Uniform(f64),
    /// Uniform integers on `[-k, k]`.
    Integer(i64),
    /// The fixed worked examples; ignores degrees and sample counts.
    PaperExamples,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub degrees: Vec<usize>,
    /// Polynomials per degree and per random distribution.
    pub samples: usize,
    pub distributions: Vec<Distribution>,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            degrees: (3..=10).collect(),
            samples: 150,
            distributions: vec![
                Distribution::Uniform(5.0),
                Distribution::Integer(5),
                Distribution::PaperExamples,
            ],
            seed: 42,
        }
    }
}

impl CorpusConfig {
    pub fn empty() -> Self {
        CorpusConfig { degrees: Vec::new(), samples: 0, distributions: Vec::new(), seed: 0 }
    }
}

/// One corpus member with a stable label.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub label: String,
    pub poly: Polynomial<f64>,
    /// Sub-seed for anything random done while checking this entry.
    pub seed: u64,
}

/// The worked examples, ascending coefficients `a_0..a_{n-1}`.
pub fn worked_examples() -> Vec<(&'static str, Vec<f64>)> {
    vec![
        ("ex_4_1", vec![-0.1, -0.1, -0.1, -0.5, -0.1, -0.3, -0.1, -0.1]),
        ("ex_5_1", vec![-3.0, -2.0, -4.0, -1.0, -2.0, -1.0]),
        ("ex_5_2", vec![-3.0, -5.0, -3.0, -4.0, -2.0, -2.0, -3.0, -1.0]),
        ("ex_5_3", vec![-1.0, -3.0, -5.0, -1.0, -6.0, -1.0, -3.0, -1.0]),
        ("ex_6_1", vec![-5.0, -1.0, -5.0, -4.0, -10.0, -3.0]),
        ("ex_6_2", vec![-0.2, -2.0, -5.0, -6.0, -2.0, -1.0, -4.0]),
        ("ex_6_3", vec![-0.2, -2.0, -2.0, -1.0, -1.0, -1.0]),
        ("ex_w_gap", vec![-6.0, 18.0, 36.0, 6.0, 12.0, -1.0]),
        ("ex_8_1", vec![5.0, -5.0, -10.0, 20.0, 17.0, 1.0, -1.0, 4.0]),
        ("ratio_family_1", vec![10.0, 100.0, 0.0, 1.0]),
    ]
}

/// SplitMix64 finalizer: decorrelates nearby seeds.
pub(crate) fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sub_seed(seed: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix(seed), |acc, &p| mix(acc ^ p))
}

fn constant_term<R: Rng>(rng: &mut R, dist: Distribution, band: usize) -> f64 {
    let modulus = match (dist, band) {
        (_, 1) => 1.0,
        (Distribution::Integer(k), 0) => {
            let k = k.max(1);
            rng.gen_range(1..=k) as f64 / (k + 1) as f64
        }
        (Distribution::Integer(k), _) => rng.gen_range(2..=k.max(2)) as f64,
        (Distribution::Uniform(_), 0) => rng.gen_range(0.01..0.99),
        (Distribution::Uniform(a), _) => rng.gen_range(1.01..a.max(1.5)),
        (Distribution::PaperExamples, _) => unreachable!("fixed corpus"),
    };
    if rng.gen_bool(0.5) {
        modulus
    } else {
        -modulus
    }
}

fn random_poly(dist: Distribution, n: usize, band: usize, seed: u64) -> Polynomial<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![constant_term(&mut rng, dist, band)];
    for _ in 1..n {
        coeffs.push(match dist {
            Distribution::Uniform(a) => rng.gen_range(-a..=a),
            Distribution::Integer(k) => rng.gen_range(-k..=k) as f64,
            Distribution::PaperExamples => unreachable!("fixed corpus"),
        });
    }
    Polynomial::new(coeffs).expect("finite coefficients")
}

/// The full corpus in a fixed order. Entry `i` of a random distribution at
/// degree `n` uses constant-term band `i mod 3`.
pub fn generate(config: &CorpusConfig) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for (d, &dist) in config.distributions.iter().enumerate() {
        if dist == Distribution::PaperExamples {
            for (i, (name, coeffs)) in worked_examples().into_iter().enumerate() {
                out.push(CorpusEntry {
                    label: name.to_string(),
                    poly: Polynomial::new(coeffs).expect("finite coefficients"),
                    seed: sub_seed(config.seed, &[d as u64, u64::MAX, i as u64]),
                });
            }
            continue;
        }
        for &n in &config.degrees {
            for i in 0..config.samples {
                let seed = sub_seed(config.seed, &[d as u64, n as u64, i as u64]);
                out.push(CorpusEntry {
                    label: format!("{}:n{n}:{i}", dist_tag(dist)),
                    poly: random_poly(dist, n, i % 3, seed),
                    seed: mix(seed),
                });
            }
        }
    }
    out
}

fn dist_tag(dist: Distribution) -> &'static str {
    match dist {
        Distribution::Uniform(_) => "uniform",
        Distribution::Integer(_) => "integer",
        Distribution::PaperExamples => "examples",
    }
}
