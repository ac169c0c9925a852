//! Deterministic inputs for the benchmarks.

use goldfish_core::dynamics::ParticleState;
use goldfish_core::linalg::ComplexMatrix;
use goldfish_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn point(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn matrix(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ComplexMatrix::from_fn(n, n, |_, _| point(&mut rng, 1.0))
}

pub fn points(n: usize, seed: u64, scale: f64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| point(&mut rng, scale)).collect()
}

/// Particles on a perturbed circle, far enough apart that short runs stay
/// regular.
pub fn particles(n: usize, seed: u64) -> ParticleState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = (0..n)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64) + point(&mut rng, 0.1))
        .collect();
    let zdot = (0..n).map(|_| point(&mut rng, 0.3)).collect();
    ParticleState { z, zdot }
}
