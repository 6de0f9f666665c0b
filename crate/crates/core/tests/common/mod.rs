#![allow(dead_code)]

use fourier_positivity::basis::{BasisKind, CoefficientVector};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Unit coefficient vectors uniform on the sphere (no positivity filter).
pub fn random_cvs(kind: BasisKind, count: usize, seed: u64) -> Vec<CoefficientVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let raw: Vec<f64> = (0..kind.len()).map(|_| rng.sample(StandardNormal)).collect();
            CoefficientVector::normalized(kind, &raw).unwrap()
        })
        .collect()
}

pub fn uniform(seed: u64, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random_range(lo..hi)).collect()
}
