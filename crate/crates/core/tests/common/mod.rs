//! Oracles shared by the integration targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rootbound::oracle::char_poly_integer;
use rootbound::Polynomial;

/// Coefficient-cell placements of unit upper-shifted `n×n` matrices (ones on
/// the superdiagonal, `-a_0..-a_{n-1}` in distinct cells on or below the
/// diagonal) whose characteristic polynomial is `p` for every one of
/// `trials` random integer assignments. Each placement lists the 0-based
/// cell of `-a_i` at index `i`.
pub fn brute_force_placements<R: Rng>(n: usize, trials: usize, rng: &mut R) -> BTreeSet<Vec<(usize, usize)>> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
    let assignments: Vec<Vec<i64>> = (0..trials)
        .map(|_| (0..n).map(|_| rng.gen_range(1..=97) * if rng.gen() { 1 } else { -1 }).collect())
        .collect();
    let mut found = BTreeSet::new();
    let mut pick = Vec::new();
    search(&cells, n, &assignments, &mut pick, &mut found);
    found
}

fn search(
    cells: &[(usize, usize)],
    n: usize,
    assignments: &[Vec<i64>],
    pick: &mut Vec<(usize, usize)>,
    found: &mut BTreeSet<Vec<(usize, usize)>>,
) {
    if pick.len() == n {
        let ok = assignments.iter().all(|a| {
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n - 1 {
                rows[i][i + 1] = 1;
            }
            for (k, &(r, c)) in pick.iter().enumerate() {
                rows[r][c] = -a[k];
            }
            let got = char_poly_integer(&rows).expect("small order");
            got.iter().zip(a).all(|(g, want)| *g == (*want).into())
        });
        if ok {
            found.insert(pick.clone());
        }
        return;
    }
    for &cell in cells {
        if !pick.contains(&cell) {
            pick.push(cell);
            search(cells, n, assignments, pick, found);
            pick.pop();
        }
    }
}

pub fn random_integer_poly<R: Rng>(n: usize, k: i64, rng: &mut R) -> Polynomial<f64> {
    Polynomial::new((0..n).map(|_| rng.gen_range(-k..=k) as f64).collect()).unwrap()
}

/// Integer coefficients with a nonzero constant term.
pub fn random_invertible_poly<R: Rng>(n: usize, k: i64, rng: &mut R) -> Polynomial<f64> {
    let mut c: Vec<f64> = (0..n).map(|_| rng.gen_range(-k..=k) as f64).collect();
    c[0] = rng.gen_range(1..=k) as f64 * if rng.gen() { 1.0 } else { -1.0 };
    Polynomial::new(c).unwrap()
}
