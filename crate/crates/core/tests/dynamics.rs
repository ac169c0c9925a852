use std::f64::consts::PI;

use goldfish_core::dynamics::*;
use goldfish_core::linalg::{multiset_distance, ComplexMatrix, Trajectory};
use goldfish_core::polynomials::{Convention, MonicPolynomial};
use goldfish_core::{Complex64, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(x: f64) -> Complex64 {
    c(x, 0.0)
}

fn rand_c(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    loop {
        let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() <= 1.0 {
            return z * scale;
        }
    }
}

fn min_sep(z: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            best = best.min((z[i] - z[j]).norm());
        }
    }
    best
}

fn random_particles(n: usize, rng: &mut ChaCha8Rng, scale: f64) -> ParticleState {
    loop {
        let z: Vec<Complex64> = (0..n).map(|_| rand_c(rng, scale)).collect();
        if min_sep(&z) > 0.1 * scale {
            let zdot = (0..n).map(|_| rand_c(rng, scale)).collect();
            return ParticleState { z, zdot };
        }
    }
}

fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect()
}

fn particle_deviation(a: &Trajectory, b: &Trajectory, n: usize) -> f64 {
    a.states
        .iter()
        .zip(&b.states)
        .map(|(x, y)| multiset_distance(&x[..n], &y[..n]))
        .fold(0.0, f64::max)
}

fn componentwise(a: &Trajectory, b: &Trajectory) -> f64 {
    a.states
        .iter()
        .zip(&b.states)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

fn coefficient_state(p: &ParticleState, conv: Convention) -> CoefficientState {
    let poly = MonicPolynomial::from_roots(&p.z, conv);
    CoefficientState {
        c: poly.tail().to_vec(),
        cdot: goldfish_core::polynomials::coeff_velocities(&p.z, &p.zdot, conv).unwrap(),
    }
}

// --- right-hand sides -------------------------------------------------

#[test]
fn gold_single_particle_has_empty_pair_sum() {
    let spec = ModelSpec::gold(1, r(0.0));
    let s = State::Particle(ParticleState {
        z: vec![r(1.0)],
        zdot: vec![r(0.0)],
    });
    let acc = eval_rhs(&spec, &s).unwrap();
    assert!((acc[0] - r(2.0)).norm() < 1e-15);
}

#[test]
fn gold_two_particles_by_hand() {
    let spec = ModelSpec::gold(2, r(0.0));
    let s = State::Particle(ParticleState {
        z: vec![r(1.0), r(-1.0)],
        zdot: vec![r(0.0), r(0.0)],
    });
    let acc = eval_rhs(&spec, &s).unwrap();
    assert!((acc[0] - r(3.0)).norm() < 1e-14);
    assert!((acc[1] - r(-3.0)).norm() < 1e-14);
}

#[test]
fn altgold_two_body_equilibrium_is_static() {
    let a2 = c(0.7, -0.3);
    let spec = ModelSpec::altgold(2, a2);
    let s = State::Coefficient(CoefficientState {
        c: vec![r(0.0), -a2],
        cdot: vec![r(0.0); 2],
    });
    let acc = eval_rhs(&spec, &s).unwrap();
    assert!(acc.iter().all(|x| x.norm() < 1e-14), "{acc:?}");
}

#[test]
fn general_gold_matches_gold_at_remark_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a2 = c(0.4, 0.9);
    let p = random_particles(4, &mut rng, 1.0);
    let s = State::Particle(p);
    let gold = eval_rhs(&ModelSpec::gold(4, a2), &s).unwrap();
    let general = eval_rhs(&ModelSpec::general_gold(4, -a2, r(0.0), r(1.0)), &s).unwrap();
    for (x, y) in gold.iter().zip(&general) {
        assert!((x - y).norm() < 1e-12);
    }
}

#[test]
fn gammatau_is_altgold_with_zero_a() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let s = State::Coefficient(CoefficientState {
        c: (0..3).map(|_| rand_c(&mut rng, 1.0)).collect(),
        cdot: (0..3).map(|_| rand_c(&mut rng, 1.0)).collect(),
    });
    let x = eval_rhs(&ModelSpec::gammatau(3), &s).unwrap();
    let y = eval_rhs(&ModelSpec::altgold(3, r(0.0)), &s).unwrap();
    assert_eq!(x, y);
}

#[test]
fn coincident_particles_are_a_collision() {
    let spec = ModelSpec::gold(2, r(0.0));
    let s = State::Particle(ParticleState {
        z: vec![r(0.5), r(0.5)],
        zdot: vec![r(0.0); 2],
    });
    assert!(matches!(eval_rhs(&spec, &s), Err(Error::Collision { i: 0, j: 1, .. })));
}

#[test]
fn shape_mismatch_is_rejected() {
    let spec = ModelSpec::gold(3, r(0.0));
    let s = State::Particle(ParticleState {
        z: vec![r(0.5), r(1.5)],
        zdot: vec![r(0.0); 2],
    });
    assert!(matches!(eval_rhs(&spec, &s), Err(Error::InvalidInput(_))));
    let coeff = State::Coefficient(CoefficientState {
        c: vec![r(0.0); 3],
        cdot: vec![r(0.0); 3],
    });
    assert!(eval_rhs(&spec, &coeff).is_err());
}

#[test]
fn system_names_round_trip() {
    for sys in System::ALL {
        assert_eq!(sys.name().parse::<System>().unwrap(), sys);
    }
    assert!("goldfish".parse::<System>().is_err());
    assert_eq!("Spectral".parse::<Method>().unwrap(), Method::Spectral);
}

#[test]
fn flat_layout_round_trips() {
    let m = MatrixFlowState {
        u: ComplexMatrix::from_fn(2, 2, |i, j| r((i * 2 + j) as f64)),
        udot: ComplexMatrix::identity(2),
    };
    let s = State::Matrix(m);
    let flat = s.flatten();
    assert_eq!(flat.len(), 8);
    assert_eq!(State::from_flat(StateKind::Matrix, 2, &flat).unwrap(), s);
    assert!(State::from_flat(StateKind::Particle, 2, &flat).is_err());
}

// --- initial data ------------------------------------------------------

#[test]
fn gold_initial_data_by_hand() {
    let spec = ModelSpec::gold(2, r(0.0));
    let init = build_matrix_initial_data(
        &spec,
        &ParticleState {
            z: vec![r(1.0), r(-1.0)],
            zdot: vec![r(0.0); 2],
        },
    )
    .unwrap();
    assert_eq!(init.u, ComplexMatrix::from_diag(&[r(1.0), r(-1.0)]));
    let want = ComplexMatrix::from_row_major(2, 2, vec![r(0.0), r(1.0), r(1.0), r(0.0)]).unwrap();
    assert!((&init.udot - &want).max_abs() < 1e-15);
}

#[test]
fn single_particle_initial_velocity_collapses() {
    for spec in [
        ModelSpec::gold(1, c(0.3, 1.0)),
        ModelSpec::isogold(1),
        ModelSpec::general_gold(1, r(0.2), r(-1.0), c(0.5, 0.5)),
        ModelSpec::rcm(1, r(2.0)),
    ] {
        let p = ParticleState {
            z: vec![c(0.2, -0.4)],
            zdot: vec![c(-0.7, 0.1)],
        };
        let init = build_matrix_initial_data(&spec, &p).unwrap();
        assert!((init.udot[(0, 0)] - p.zdot[0]).norm() < 1e-15, "{}", spec.system);
    }
}

#[test]
fn initial_data_diagonal_reproduces_velocities() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = random_particles(4, &mut rng, 1.0);
    let init = build_matrix_initial_data(&ModelSpec::isogold(4), &p).unwrap();
    for k in 0..4 {
        assert!((init.udot[(k, k)] - p.zdot[k]).norm() < 1e-14);
    }
}

#[test]
fn coincident_initial_positions_are_rejected() {
    let p = ParticleState {
        z: vec![r(0.1), r(0.1)],
        zdot: vec![r(0.0); 2],
    };
    assert!(matches!(
        build_matrix_initial_data(&ModelSpec::gold(2, r(0.0)), &p),
        Err(Error::Collision { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn square_root_branch_does_not_change_the_spectrum(seed in 0u64..1000, mask in 0u8..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = ModelSpec::gold(3, c(-1.0, 0.0));
        let p = random_particles(3, &mut rng, 0.8);
        let flips: Vec<bool> = (0..3).map(|k| mask & (1 << k) != 0).collect();
        let a = build_matrix_initial_data(&spec, &p).unwrap();
        let b = build_matrix_initial_data_with_signs(&spec, &p, &flips).unwrap();
        let times = linspace(0.0, 0.5, 6);
        let fa = evolve_matrix_flow(&spec, &a, &times, 1e-12);
        let fb = evolve_matrix_flow(&spec, &b, &times, 1e-12);
        prop_assume!(fa.is_ok() && fb.is_ok());
        for (x, y) in fa.unwrap().iter().zip(&fb.unwrap()) {
            let ex = goldfish_core::linalg::eigenvalues(&x.u).unwrap();
            let ey = goldfish_core::linalg::eigenvalues(&y.u).unwrap();
            prop_assert!(multiset_distance(&ex, &ey) < 1e-9);
        }
    }
}

// --- simulation --------------------------------------------------------

#[test]
fn gold_one_body_blows_up_like_inverse_linear() {
    let spec = ModelSpec::gold(1, r(0.0));
    let s0 = State::Particle(ParticleState {
        z: vec![r(1.0)],
        zdot: vec![r(1.0)],
    });
    let sim = simulate(&spec, &s0, &[0.25, 0.5], Method::Direct, 1e-12).unwrap();
    assert!((sim.trajectory.states[1][0] - r(2.0)).norm() < 1e-8);
    assert!((sim.trajectory.states[1][1] - r(4.0)).norm() < 1e-7);
    let spectral = simulate(&spec, &s0, &[0.5], Method::Spectral, 1e-12).unwrap();
    assert!((spectral.trajectory.states[0][0] - r(2.0)).norm() < 1e-8);
}

#[test]
fn gold_one_body_reports_the_pole() {
    let spec = ModelSpec::gold(1, r(0.0));
    let s0 = State::Particle(ParticleState {
        z: vec![r(1.0)],
        zdot: vec![r(1.0)],
    });
    match simulate(&spec, &s0, &[1.5], Method::Direct, 1e-10) {
        Err(Error::MovableSingularity { t, .. }) => assert!((t - 1.0).abs() < 1e-3, "t = {t}"),
        other => panic!("expected a singularity, got {other:?}"),
    }
}

#[test]
fn rcm_free_particle_is_harmonic() {
    let spec = ModelSpec::rcm(1, r(0.0));
    let (z0, v) = (c(0.3, -1.2), c(2.0, 0.5));
    let s0 = State::Particle(ParticleState {
        z: vec![z0],
        zdot: vec![v],
    });
    let sim = simulate(&spec, &s0, &[PI / 2.0], Method::Spectral, 1e-10).unwrap();
    assert!((sim.trajectory.states[0][0] - v).norm() < 1e-15);
    assert!((sim.trajectory.states[0][1] + z0).norm() < 1e-15);
}

#[test]
fn rcm_closed_form_matches_direct_integration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let spec = ModelSpec::rcm(3, c(0.3, 0.1));
    let p = random_particles(3, &mut rng, 1.0);
    let s0 = State::Particle(p);
    let times = linspace(0.0, 1.0, 11);
    let d = simulate(&spec, &s0, &times, Method::Direct, 1e-12).unwrap();
    let s = simulate(&spec, &s0, &times, Method::Spectral, 1e-12).unwrap();
    assert!(particle_deviation(&d.trajectory, &s.trajectory, 3) < 1e-8);
}

#[test]
fn gold_direct_and_spectral_agree_for_negative_a2() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let spec = ModelSpec::gold(2, r(-1.0));
    let times = linspace(0.0, 1.0, 21);
    let mut done = 0;
    while done < 5 {
        let s0 = State::Particle(random_particles(2, &mut rng, 1.0));
        let (Ok(d), Ok(s)) = (
            simulate(&spec, &s0, &times, Method::Direct, 1e-12),
            simulate(&spec, &s0, &times, Method::Spectral, 1e-12),
        ) else {
            continue;
        };
        if d.trajectory
            .states
            .iter()
            .any(|x| min_sep(&x[..2]) < 0.05 || x.iter().any(|v| v.norm() > 50.0))
        {
            continue;
        }
        let dev = particle_deviation(&d.trajectory, &s.trajectory, 2);
        assert!(dev <= 1e-8, "deviation {dev}");
        done += 1;
    }
}

fn oracle_case(spec: &ModelSpec, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let times = linspace(0.0, 0.5, 11);
    let n = spec.n;
    for _ in 0..50 {
        let p = random_particles(n, &mut rng, 1.0);
        let s0 = match spec.system.kind() {
            StateKind::Particle => State::Particle(p),
            _ => State::Coefficient(coefficient_state(&p, coefficient_convention(spec.system))),
        };
        let (Ok(d), Ok(s)) = (
            simulate(spec, &s0, &times, Method::Direct, 1e-12),
            simulate(spec, &s0, &times, Method::Spectral, 1e-12),
        ) else {
            continue;
        };
        let dev = match spec.system.kind() {
            StateKind::Particle => {
                if d.trajectory.states.iter().any(|x| min_sep(&x[..n]) < 0.05) {
                    continue;
                }
                particle_deviation(&d.trajectory, &s.trajectory, n)
            }
            _ => componentwise(&d.trajectory, &s.trajectory),
        };
        if d.trajectory.states.iter().flatten().any(|v| v.norm() > 50.0) {
            continue;
        }
        assert!(dev <= 1e-7, "{}: deviation {dev}", spec.system);
        return;
    }
    panic!("{}: no admissible sample", spec.system);
}

#[test]
fn every_matrix_companion_reproduces_direct_integration() {
    let specs = [
        ModelSpec::gold(3, c(1.0, 1.0)),
        ModelSpec::isogold(3),
        ModelSpec::general_gold(3, c(0.2, -0.1), c(0.5, 0.3), c(0.9, 0.2)),
        ModelSpec::altgold(3, r(-1.0)),
        ModelSpec::gammatau(3),
        ModelSpec::altisogold(3),
        ModelSpec::rcm(3, c(0.4, 0.0)),
        ModelSpec::veselov(3, c(0.2, 0.1), vec![r(0.1), r(-0.5), c(0.0, 0.3)]),
    ];
    for (k, spec) in specs.iter().enumerate() {
        oracle_case(spec, 100 + k as u64);
    }
}

#[test]
fn matrix_systems_have_no_spectral_route() {
    let spec = ModelSpec::matrix_u(2, r(0.0));
    let s0 = State::Matrix(MatrixFlowState {
        u: ComplexMatrix::identity(2),
        udot: ComplexMatrix::zeros(2, 2),
    });
    assert!(matches!(
        simulate(&spec, &s0, &[0.1], Method::Spectral, 1e-10),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn spectral_coefficients_are_the_characteristic_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let u = ComplexMatrix::from_fn(4, 4, |_, _| rand_c(&mut rng, 1.0));
    let ud = ComplexMatrix::from_fn(4, 4, |_, _| rand_c(&mut rng, 1.0));
    let (cc, cd) = charpoly_with_derivative(&u, &ud);
    let ev = goldfish_core::linalg::eigenvalues(&u).unwrap();
    let vieta = MonicPolynomial::from_roots(&ev, Convention::Plain);
    for (x, y) in cc.iter().zip(vieta.tail()) {
        assert!((x - y).norm() < 1e-10);
    }
    let h = 1e-5;
    let plus = charpoly_with_derivative(&(&u + &ud.scale(r(h))), &ud).0;
    let minus = charpoly_with_derivative(&(&u - &ud.scale(r(h))), &ud).0;
    for k in 0..4 {
        let fd = (plus[k] - minus[k]) / (2.0 * h);
        assert!((fd - cd[k]).norm() < 1e-8);
    }
}

#[test]
fn general_gold_reduces_by_shift_and_time_rescale() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let (alpha, beta, gamma) = (c(0.3, -0.2), c(0.6, 0.4), r(1.7));
    let n = 3;
    let spec = ModelSpec::general_gold(n, alpha, beta, gamma);
    let shift = beta / (gamma * 2.0);
    let alpha_red = (alpha - beta * beta / (gamma * 4.0)) / gamma;
    let reduced = ModelSpec::general_gold(n, alpha_red, r(0.0), r(1.0));
    let p = random_particles(n, &mut rng, 0.5);
    let w0 = ParticleState {
        z: p.z.iter().map(|z| z + shift).collect(),
        zdot: p.zdot.iter().map(|v| v / gamma).collect(),
    };
    let times = linspace(0.0, 0.4, 9);
    let scaled: Vec<f64> = times.iter().map(|t| t * gamma.re).collect();
    let a = simulate(&spec, &State::Particle(p), &times, Method::Direct, 1e-12).unwrap();
    let b = simulate(&reduced, &State::Particle(w0), &scaled, Method::Direct, 1e-12).unwrap();
    for (x, y) in a.trajectory.states.iter().zip(&b.trajectory.states) {
        for k in 0..n {
            assert!((x[k] - (y[k] - shift)).norm() < 1e-7);
            assert!((x[n + k] - y[n + k] * gamma).norm() < 1e-7);
        }
    }
}

// --- the trick ---------------------------------------------------------

#[test]
fn tau_vanishes_at_multiples_of_two_pi() {
    assert!(trick_tau(0.0).norm() < 1e-16);
    assert!(trick_tau(2.0 * PI).norm() < 1e-15);
    assert!((trick_tau(PI) - c(0.0, 2.0)).norm() < 1e-15);
}

#[test]
fn trick_of_zero_is_zero() {
    let s = State::Particle(ParticleState {
        z: vec![r(0.0); 3],
        zdot: vec![r(0.0); 3],
    });
    let out = trick_transform(TrickDirection::Forward, 1.3, &s).unwrap();
    assert!(out.flatten().iter().all(|v| v.norm() == 0.0));
}

proptest! {
    #[test]
    fn trick_directions_are_inverse(t in -7.0f64..7.0, seed in 0u64..500, kind in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = match kind {
            0 => State::Particle(random_particles(3, &mut rng, 1.0)),
            1 => State::Coefficient(CoefficientState {
                c: (0..3).map(|_| rand_c(&mut rng, 1.0)).collect(),
                cdot: (0..3).map(|_| rand_c(&mut rng, 1.0)).collect(),
            }),
            _ => State::Matrix(MatrixFlowState {
                u: ComplexMatrix::from_fn(2, 2, |_, _| rand_c(&mut rng, 1.0)),
                udot: ComplexMatrix::from_fn(2, 2, |_, _| rand_c(&mut rng, 1.0)),
            }),
        };
        let f = trick_transform(TrickDirection::Forward, t, &s).unwrap();
        let b = trick_transform(TrickDirection::Backward, t, &f).unwrap();
        for (x, y) in s.flatten().iter().zip(&b.flatten()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }
}

#[test]
fn trick_of_constant_coefficient_tau_data_matches_plain_and_tilde_conventions() {
    // zeta-world zeros transported forward agree with the tilde coefficients
    // of the transported zeros
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let p = random_particles(3, &mut rng, 0.5);
    let t = 0.7;
    let zt = trick_transform(TrickDirection::Forward, t, &State::Particle(p.clone())).unwrap();
    let ct = trick_transform(
        TrickDirection::Forward,
        t,
        &State::Coefficient(coefficient_state(&p, Convention::Plain)),
    )
    .unwrap();
    let State::Particle(zt) = zt else { unreachable!() };
    let want = coefficient_state(&zt, Convention::Tilde);
    for (x, y) in ct.flatten().iter().zip(State::Coefficient(want).flatten().iter()) {
        assert!((x - y).norm() < 1e-12);
    }
}

#[test]
fn matrix_utilde_is_the_transported_matrix_u() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let n = 3;
    let zeta0 = MatrixFlowState {
        u: ComplexMatrix::from_fn(n, n, |_, _| rand_c(&mut rng, 0.3)),
        udot: ComplexMatrix::from_fn(n, n, |_, _| rand_c(&mut rng, 0.3)),
    };
    let times = linspace(0.0, 2.0 * PI, 25);
    let tau_world = integrate_tau_path(
        &ModelSpec::matrix_u(n, r(0.0)),
        &State::Matrix(zeta0.clone()),
        &times,
        1e-12,
    )
    .unwrap();
    let moved = trick_transform_trajectory(TrickDirection::Forward, &tau_world, StateKind::Matrix, n).unwrap();
    let tilde0 = trick_transform(TrickDirection::Forward, 0.0, &State::Matrix(zeta0)).unwrap();
    let direct = simulate(&ModelSpec::matrix_utilde(n), &tilde0, &times, Method::Direct, 1e-12).unwrap();
    let dev = componentwise(&moved, &direct.trajectory);
    assert!(dev < 1e-7, "deviation {dev}");
}

#[test]
fn transported_gammatau_solves_the_isochronous_coefficient_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let n = 3;
    let gamma0 = State::Coefficient(coefficient_state(
        &random_particles(n, &mut rng, 0.3),
        Convention::Plain,
    ));
    let h = 0.004;
    let times: Vec<f64> = (0..=500).map(|k| k as f64 * h).collect();
    let tau_world = integrate_tau_path(&ModelSpec::gammatau(n), &gamma0, &times, 1e-13).unwrap();
    let moved = trick_transform_trajectory(TrickDirection::Forward, &tau_world, StateKind::Coefficient, n).unwrap();
    let spec = ModelSpec::altisogold(n);
    let mut worst = 0.0f64;
    for k in 2..times.len() - 2 {
        let s = State::from_flat(StateKind::Coefficient, n, &moved.states[k]).unwrap();
        let acc = eval_rhs(&spec, &s).unwrap();
        for m in 0..n {
            let v = |o: usize| moved.states[o][n + m];
            let fd = (v(k - 2) - v(k - 1) * 8.0 + v(k + 1) * 8.0 - v(k + 2)) / (12.0 * h);
            worst = worst.max((fd - acc[m]).norm());
        }
    }
    assert!(worst <= 1e-7, "residual {worst}");
}

// --- periodicity -------------------------------------------------------

#[test]
fn constant_trajectory_has_period_one() {
    let times = linspace(0.0, 4.0 * PI, 41);
    let traj = Trajectory {
        states: vec![vec![c(1.0, 2.0), r(0.0)]; times.len()],
        times,
    };
    let rep = detect_period(&traj, 2.0 * PI, 2, 1e-12).unwrap();
    assert_eq!(rep.p, Some(1));
    assert_eq!(rep.deviation, 0.0);
}

#[test]
fn swapping_pair_has_period_two() {
    let times = linspace(0.0, 4.0 * PI, 81);
    let states = times
        .iter()
        .map(|&t| {
            let z = Complex64::from_polar(1.0, t / 2.0);
            vec![z, -z]
        })
        .collect();
    let traj = Trajectory { times, states };
    let rep = detect_period(&traj, 2.0 * PI, 2, 1e-9).unwrap();
    assert_eq!(rep.p, Some(2));
    assert!(rep.per_multiple[0].unwrap() > 1.0);
}

#[test]
fn short_trajectory_is_rejected() {
    let times = linspace(0.0, 2.0 * PI, 11);
    let traj = Trajectory {
        states: vec![vec![r(0.0)]; times.len()],
        times,
    };
    assert!(matches!(
        detect_period(&traj, 2.0 * PI, 2, 1e-9),
        Err(Error::TrajectoryTooShort { .. })
    ));
}

#[test]
fn isogold_is_isochronous() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let n = 2;
    let times = linspace(0.0, 2.0 * PI * n as f64, 8 * n + 1);
    let mut done = 0;
    while done < 3 {
        let s0 = State::Particle(random_particles(n, &mut rng, 0.3));
        let Ok(sim) = simulate(&ModelSpec::isogold(n), &s0, &times, Method::Direct, 1e-12) else {
            continue;
        };
        let rep = detect_period(&sim.trajectory, 2.0 * PI, n, 1e-6).unwrap();
        assert!(rep.p.is_some(), "deviations {:?}", rep.per_multiple);
        done += 1;
    }
}

#[test]
fn altisogold_has_period_two_pi() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let n = 3;
    let s0 = State::Coefficient(coefficient_state(
        &random_particles(n, &mut rng, 0.3),
        Convention::Tilde,
    ));
    let times = linspace(0.0, 2.0 * PI * n as f64, 12 * n + 1);
    let sim = simulate(&ModelSpec::altisogold(n), &s0, &times, Method::Direct, 1e-12).unwrap();
    let rep = detect_period(&sim.trajectory, 2.0 * PI, n, 1e-6).unwrap();
    assert_eq!(rep.p, Some(1), "deviations {:?}", rep.per_multiple);
}

#[test]
fn matrix_utilde_has_period_two_pi() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let n = 2;
    let s0 = State::Matrix(MatrixFlowState {
        u: ComplexMatrix::from_fn(n, n, |_, _| rand_c(&mut rng, 0.3)),
        udot: ComplexMatrix::from_fn(n, n, |_, _| rand_c(&mut rng, 0.3)),
    });
    let times = linspace(0.0, 4.0 * PI, 33);
    let sim = simulate(&ModelSpec::matrix_utilde(n), &s0, &times, Method::Direct, 1e-12).unwrap();
    let rep = detect_period(&sim.trajectory, 2.0 * PI, 2, 1e-6).unwrap();
    assert_eq!(rep.p, Some(1));
}

// --- polynomial evolution equations ------------------------------------

fn random_points(rng: &mut ChaCha8Rng, k: usize) -> Vec<Complex64> {
    (0..k).map(|_| rand_c(rng, 2.0)).collect()
}

#[test]
fn pde_holds_along_altgold_trajectory() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let n = 3;
    let spec = ModelSpec::altgold(n, c(0.5, 0.2));
    let s0 = State::Coefficient(coefficient_state(
        &random_particles(n, &mut rng, 0.6),
        Convention::Plain,
    ));
    let times = linspace(0.0, 0.5, 101);
    let sim = simulate(&spec, &s0, &times, Method::Direct, 1e-13).unwrap();
    let zs = random_points(&mut rng, 10);
    let fd = pde_residual(&spec, &sim.trajectory, &zs, TimeDerivative::FiniteDifference).unwrap();
    let sub = pde_residual(&spec, &sim.trajectory, &zs, TimeDerivative::Substitution).unwrap();
    assert!(fd <= 1e-6, "finite difference residual {fd}");
    assert!(sub <= 1e-10, "substitution residual {sub}");
}

#[test]
fn pde_holds_along_altisogold_trajectory() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let n = 3;
    let spec = ModelSpec::altisogold(n);
    let s0 = State::Coefficient(coefficient_state(
        &random_particles(n, &mut rng, 0.5),
        Convention::Tilde,
    ));
    let times = linspace(0.0, 1.0, 201);
    let sim = simulate(&spec, &s0, &times, Method::Direct, 1e-13).unwrap();
    let zs = random_points(&mut rng, 10);
    let fd = pde_residual(&spec, &sim.trajectory, &zs, TimeDerivative::FiniteDifference).unwrap();
    assert!(fd <= 1e-6, "residual {fd}");
}

#[test]
fn pde_vanishes_on_equilibria() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let zs = random_points(&mut rng, 10);
    let a2 = r(2.0);
    let zero = vec![r(0.0); 2];
    let alt = ModelSpec::altgold(2, a2);
    let v = pde_residual_at(&alt, &[r(0.0), -a2], &zero, &zero, zs[0]).unwrap();
    assert!(v.norm() <= 1e-10);
    // (z - i)^2 z in the tilde convention
    let iso = ModelSpec::altisogold(3);
    let zero3 = vec![r(0.0); 3];
    for &z in &zs {
        let v = pde_residual_at(&iso, &[r(-2.0), r(1.0), r(0.0)], &zero3, &zero3, z).unwrap();
        assert!(v.norm() <= 1e-10, "{v}");
    }
}

#[test]
fn single_zero_pde_is_the_particle_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    let a2 = c(0.3, -0.8);
    let spec = ModelSpec::altgold(1, a2);
    let gold = ModelSpec::gold(1, a2);
    for z in random_points(&mut rng, 5) {
        let (z1, v1, w) = (rand_c(&mut rng, 1.0), rand_c(&mut rng, 1.0), rand_c(&mut rng, 1.0));
        let acc = eval_rhs(
            &gold,
            &State::Particle(ParticleState {
                z: vec![z1],
                zdot: vec![v1],
            }),
        )
        .unwrap()[0];
        let res = pde_residual_at(&spec, &[-z1], &[-v1], &[-w], z).unwrap();
        assert!((res + (w - acc)).norm() < 1e-12);
    }
}

#[test]
fn pde_rejects_systems_without_one() {
    let spec = ModelSpec::gold(1, r(0.0));
    assert!(matches!(
        pde_residual_at(&spec, &[r(0.0)], &[r(0.0)], &[r(0.0)], r(1.0)),
        Err(Error::Unsupported(_))
    ));
}

// --- structural identities ---------------------------------------------

#[test]
fn quartic_vanishes_on_constants() {
    let f = c(0.4, 1.3);
    assert_eq!(quartic_n2([f, r(0.0), r(0.0), r(0.0), r(0.0)], c(2.0, 1.0)), r(0.0));
}

#[test]
fn quartic_holds_along_two_body_coefficient_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let a2 = c(-0.5, 0.3);
    let spec = ModelSpec::altgold(2, a2);
    let s0 = State::Coefficient(coefficient_state(
        &random_particles(2, &mut rng, 0.7),
        Convention::Plain,
    ));
    let times = linspace(0.0, 0.5, 101);
    let sim = simulate(&spec, &s0, &times, Method::Direct, 1e-13).unwrap();
    let rep = structural_residuals(&StructuralCheck::QuarticN2 {
        traj: &sim.trajectory,
        a2,
    })
    .unwrap();
    assert!(rep.max_residual <= 1e-5, "{rep:?}");
    assert_eq!(rep.evaluations, 97);
}

#[test]
fn quadratic_functional_equation_is_exact() {
    let a2 = c(0.3, 0.2);
    let rep = structural_residuals(&StructuralCheck::FuncEq {
        f: [-a2, r(0.0), r(1.0)],
        points: &[(r(1.0), c(0.0, 1.0))],
    })
    .unwrap();
    assert_eq!(rep.max_residual, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    let pts: Vec<_> = (0..20)
        .map(|_| (rand_c(&mut rng, 3.0), rand_c(&mut rng, 3.0)))
        .collect();
    let rep = structural_residuals(&StructuralCheck::FuncEq {
        f: [c(1.0, -2.0), c(0.5, 0.5), c(-3.0, 0.1)],
        points: &pts,
    })
    .unwrap();
    assert!(rep.max_residual < 1e-12);
}

#[test]
fn goldfish_initial_data_is_rank_one_after_gauge_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(65);
    for spec in [
        ModelSpec::gold(4, c(0.5, 1.0)),
        ModelSpec::isogold(4),
        ModelSpec::general_gold(4, c(0.1, 0.2), c(-0.3, 0.0), c(1.2, -0.4)),
    ] {
        let p = random_particles(4, &mut rng, 1.0);
        let rep = structural_residuals(&StructuralCheck::GaugeRank1 {
            spec: &spec,
            state0: &p,
        })
        .unwrap();
        assert!(rep.max_residual <= 1e-10, "{}: {rep:?}", spec.system);
        assert_eq!(rep.evaluations, 36);
    }
}

#[test]
fn rcm_initial_data_is_not_rank_one() {
    let p = ParticleState {
        z: vec![r(0.0), r(1.0), r(2.5)],
        zdot: vec![r(0.1); 3],
    };
    let spec = ModelSpec::rcm(3, r(1.0));
    let rep = structural_residuals(&StructuralCheck::GaugeRank1 {
        spec: &spec,
        state0: &p,
    })
    .unwrap();
    assert!(rep.max_residual > 1e-3);
}

#[test]
fn spectral_velocities_are_the_diagonal_of_the_rotated_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    let spec = ModelSpec::gold(3, r(1.0));
    let p = random_particles(3, &mut rng, 0.6);
    let times = linspace(0.0, 0.5, 6);
    let rep = structural_residuals(&StructuralCheck::Wnn {
        spec: &spec,
        state0: &p,
        t_samples: &times,
        tol: 1e-12,
    })
    .unwrap();
    assert!(rep.max_residual <= 1e-7, "{rep:?}");
}

#[test]
fn ansatz_holds_along_three_body_goldfish() {
    let mut rng = ChaCha8Rng::seed_from_u64(69);
    let a2 = c(0.4, -0.2);
    let spec = ModelSpec::gold(3, a2);
    // well separated, slow particles keep the flow smooth enough for the stencil
    let s0 = State::Particle(ParticleState {
        z: (0..3)
            .map(|k| Complex64::from_polar(0.8, 2.0 * PI * k as f64 / 3.0) + rand_c(&mut rng, 0.2))
            .collect(),
        zdot: (0..3).map(|_| rand_c(&mut rng, 0.3)).collect(),
    });
    let times = linspace(0.0, 0.4, 161);
    let sim = simulate(&spec, &s0, &times, Method::Direct, 1e-13).unwrap();
    let rep = structural_residuals(&StructuralCheck::AnsatzEvb {
        traj: &sim.trajectory,
        a2,
    })
    .unwrap();
    assert!(rep.max_residual <= 1e-6, "{rep:?}");
}

#[test]
fn ansatz_check_detects_wrong_parameter() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let spec = ModelSpec::gold(3, r(0.4));
    let s0 = State::Particle(random_particles(3, &mut rng, 0.6));
    let times = linspace(0.0, 0.4, 41);
    let sim = simulate(&spec, &s0, &times, Method::Direct, 1e-13).unwrap();
    let rep = structural_residuals(&StructuralCheck::AnsatzEvb {
        traj: &sim.trajectory,
        a2: r(1.4),
    })
    .unwrap();
    assert!(rep.max_residual > 1e-3);
}

#[test]
fn boundary_equations_hold_identically() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for n in 1..=6 {
        let state = CoefficientState {
            c: (0..n).map(|_| rand_c(&mut rng, 2.0)).collect(),
            cdot: (0..n).map(|_| rand_c(&mut rng, 2.0)).collect(),
        };
        for spec in [ModelSpec::altgold(n, c(1.0, -0.5)), ModelSpec::gammatau(n)] {
            let rep = structural_residuals(&StructuralCheck::Boundary {
                spec: &spec,
                state: &state,
            })
            .unwrap();
            assert!(rep.max_residual < 1e-12, "N = {n}: {rep:?}");
        }
    }
}

#[test]
fn finite_difference_checks_need_uniform_samples() {
    let traj = Trajectory {
        times: vec![0.0, 0.1, 0.3, 0.4, 0.5, 0.6],
        states: vec![vec![r(0.0); 4]; 6],
    };
    assert!(structural_residuals(&StructuralCheck::QuarticN2 {
        traj: &traj,
        a2: r(0.0)
    })
    .is_err());
}
