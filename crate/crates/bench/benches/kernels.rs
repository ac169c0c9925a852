use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use goldfish_bench::{matrix, particles, points};
use goldfish_core::dynamics::{simulate, Method, ModelSpec, State};
use goldfish_core::equilibria::EquilibriumConfig;
use goldfish_core::linalg::eigenvalues;
use goldfish_core::polynomials::{find_roots, rat_int, Convention, MonicPolynomial};
use goldfish_core::spectrum::{build_pencil, exact_spectrum, solve_pencil_numeric};
use goldfish_core::Complex64;

fn eigen(c: &mut Criterion) {
    let mut g = c.benchmark_group("eigenvalues");
    for n in [4, 8, 16, 32] {
        let m = matrix(n, n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| eigenvalues(black_box(m)).unwrap())
        });
    }
    g.finish();
}

fn roots(c: &mut Criterion) {
    let mut g = c.benchmark_group("find_roots");
    for n in [4, 8, 16] {
        let p = MonicPolynomial::from_roots(&points(n, 7, 1.0), Convention::Plain);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| find_roots(black_box(p), 1e-14).unwrap())
        });
    }
    g.finish();
}

fn pencils(c: &mut Criterion) {
    let mut g = c.benchmark_group("pencil");
    for n in [4, 7, 10] {
        let pencil = build_pencil(&EquilibriumConfig::iso(1, 1, n, &rat_int(0)).unwrap()).unwrap();
        g.bench_with_input(BenchmarkId::new("exact", n), &pencil, |b, p| {
            b.iter(|| exact_spectrum(black_box(p)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("numeric", n), &pencil, |b, p| {
            b.iter(|| solve_pencil_numeric(black_box(p)).unwrap())
        });
    }
    g.finish();
}

fn trajectories(c: &mut Criterion) {
    let mut g = c.benchmark_group("simulate_gold");
    g.sample_size(20);
    let times: Vec<f64> = (0..=20).map(|k| k as f64 * 0.025).collect();
    for n in [3, 6] {
        let spec = ModelSpec::gold(n, Complex64::new(0.5, 0.0));
        let s0 = State::Particle(particles(n, 3));
        for method in [Method::Direct, Method::Spectral] {
            g.bench_function(BenchmarkId::new(format!("{method:?}"), n), |b| {
                b.iter(|| simulate(&spec, black_box(&s0), &times, method, 1e-10).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, eigen, roots, pencils, trajectories);
criterion_main!(benches);
