//! Benchmark fixtures.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rht_core::linalg::int;
use rht_core::rings::{diamond_b, diamond_c, projective_space};
use rht_core::{MatrixQ, Presentation, Rational};

/// Named rings exercised by the model benches.
pub fn named_rings() -> Vec<(&'static str, Presentation)> {
    vec![
        ("P3", projective_space(3)),
        ("P5", projective_space(5)),
        ("diamond_b", diamond_b(&Rational::new(7.into(), 3.into()))),
        ("diamond_c", diamond_c()),
    ]
}

/// A reproducible sparse integer matrix with entries in `-9..=9`.
/// `density` is the probability that an entry is nonzero.
pub fn random_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> MatrixQ {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut m = MatrixQ::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.random_bool(density) {
                let v: i64 = rng.random_range(-9..=9);
                m.set(i, j, int(v)).expect("in bounds");
            }
        }
    }
    m
}
