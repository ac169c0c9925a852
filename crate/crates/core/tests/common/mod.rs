#![allow(dead_code)]

pub mod printed;

use goldfish_core::dynamics::ParticleState;
use goldfish_core::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Uniform in the disk of radius `scale`.
pub fn rand_c(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() <= 1.0 {
            return z * scale;
        }
    }
}

pub fn min_sep(z: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            best = best.min((z[i] - z[j]).norm());
        }
    }
    best
}

/// Positions at least `scale / 10` apart.
pub fn random_particles(n: usize, rng: &mut ChaCha8Rng, scale: f64) -> ParticleState {
    loop {
        let z: Vec<Complex64> = (0..n).map(|_| rand_c(rng, scale)).collect();
        if min_sep(&z) > 0.1 * scale {
            let zdot = (0..n).map(|_| rand_c(rng, scale)).collect();
            return ParticleState { z, zdot };
        }
    }
}

pub fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect()
}
