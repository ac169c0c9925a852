//! The single-shot commands.

use std::f64::consts::PI;
use std::time::Instant;

use goldfish_core::dynamics::{
    detect_period, simulate, CoefficientState, MatrixFlowState, Method, ModelSpec, ParticleState, State, StateKind,
    System,
};
use goldfish_core::equilibria::{
    cmbar_closed_form, enumerate_altgold_equilibria, enumerate_iso_equilibria, equilibrium_residual, free_samples,
    genuineness_check, iso_cbar, nu5_samples, solve_iso_recursion, EquilibriumConfig, Genuineness, ResidualSystem,
};
use goldfish_core::linalg::{ComplexMatrix, Trajectory};
use goldfish_core::polynomials::{
    coeff_velocities, format_rational, rat, rat_int, IntegerPolynomial, MonicPolynomial, Rational,
};
use goldfish_core::spectrum::{
    build_pencil, solve_pencil_numeric, spectral_report, verify_conjectures, verify_integrality, Conjecture,
    ConjectureVerdict,
};
use goldfish_core::{Complex64, Error};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::{
    ConjectureArgs, EquilibriaArgs, IsochronyArgs, ReportArgs, SimulateArgs, SpectrumArgs, VerifyArgs, Which,
};
use crate::error::{CliError, CliResult};
use crate::output::{csv_text, pair, svg_text, write_bytes, write_json, SCHEMA_VERSION};
use crate::values::concat;

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_s: Option<f64>,
    pub passed: bool,
    pub result: T,
}

/// Writes the report and turns `passed` into the exit status.
pub fn finish<T: Serialize>(
    command: &'static str,
    args: &[String],
    opts: &ReportArgs,
    start: Instant,
    passed: bool,
    result: T,
) -> CliResult<bool> {
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command,
        args: args.to_vec(),
        wall_clock_s: opts.timing.then(|| start.elapsed().as_secs_f64()),
        passed,
        result,
    };
    write_json(opts.out.as_deref(), &report)?;
    Ok(passed)
}

pub fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn poly_json(p: &IntegerPolynomial) -> Vec<String> {
    rationals(p.coeffs())
}

pub fn bigints(v: &[BigInt]) -> Vec<Value> {
    v.iter()
        .map(|b| b.to_i64().map_or_else(|| Value::String(b.to_string()), Value::from))
        .collect()
}

pub fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

pub fn rand_c(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() <= 1.0 {
            return z * scale;
        }
    }
}

pub fn min_separation(z: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            best = best.min((z[i] - z[j]).norm());
        }
    }
    best
}

pub fn random_particles(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ParticleState {
    loop {
        let z: Vec<Complex64> = (0..n).map(|_| rand_c(rng, scale)).collect();
        if min_separation(&z) > 0.1 * scale {
            let zdot = (0..n).map(|_| rand_c(rng, scale)).collect();
            return ParticleState { z, zdot };
        }
    }
}

fn coefficients_from(system: System, p: &ParticleState) -> CliResult<CoefficientState> {
    let conv = goldfish_core::dynamics::coefficient_convention(system);
    Ok(CoefficientState {
        c: MonicPolynomial::from_roots(&p.z, conv).tail().to_vec(),
        cdot: coeff_velocities(&p.z, &p.zdot, conv)?,
    })
}

fn random_state(spec: &ModelSpec, rng: &mut ChaCha8Rng, scale: f64) -> CliResult<State> {
    let n = spec.n;
    Ok(match spec.system.kind() {
        StateKind::Particle => State::Particle(random_particles(rng, n, scale)),
        StateKind::Coefficient => State::Coefficient(coefficients_from(spec.system, &random_particles(rng, n, scale))?),
        StateKind::Matrix => State::Matrix(MatrixFlowState {
            u: ComplexMatrix::from_fn(n, n, |_, _| rand_c(rng, scale)),
            udot: ComplexMatrix::from_fn(n, n, |_, _| rand_c(rng, scale)),
        }),
    })
}

fn given_state(spec: &ModelSpec, z0: &[Complex64], v0: &[Complex64]) -> CliResult<State> {
    let n = spec.n;
    let want = if spec.system.kind() == StateKind::Matrix {
        n * n
    } else {
        n
    };
    if z0.len() != want || v0.len() != want {
        return Err(CliError::Usage(format!(
            "{} with N = {n} needs {want} values in --z0 and --v0, got {} and {}",
            spec.system,
            z0.len(),
            v0.len()
        )));
    }
    let p = ParticleState {
        z: z0.to_vec(),
        zdot: v0.to_vec(),
    };
    Ok(match spec.system.kind() {
        StateKind::Particle => State::Particle(p),
        StateKind::Coefficient => State::Coefficient(coefficients_from(spec.system, &p)?),
        StateKind::Matrix => State::Matrix(MatrixFlowState {
            u: ComplexMatrix::from_row_major(n, n, p.z)?,
            udot: ComplexMatrix::from_row_major(n, n, p.zdot)?,
        }),
    })
}

pub fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    if k == 1 {
        return vec![a];
    }
    (0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect()
}

fn labels(spec: &ModelSpec) -> Vec<String> {
    let n = spec.n;
    match spec.system.kind() {
        StateKind::Particle => (1..=n).map(|k| format!("z{k}")).collect(),
        StateKind::Coefficient => (1..=n).map(|k| format!("c{k}")).collect(),
        StateKind::Matrix => (1..=n)
            .flat_map(|i| (1..=n).map(move |j| format!("u{i}_{j}")))
            .collect(),
    }
}

pub fn simulate_cmd(a: &SimulateArgs) -> CliResult<bool> {
    if a.n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    if a.samples < 2 || a.t_end.is_nan() || a.t_end <= 0.0 {
        return Err(CliError::Usage("need --samples >= 2 and --t-end > 0".into()));
    }
    let mut spec = ModelSpec::new(a.system, a.n);
    if let Some(v) = a.a2 {
        spec.a2 = v;
    }
    if let Some(v) = a.alpha {
        spec.alpha = v;
    }
    if let Some(v) = a.beta {
        spec.beta = v;
    }
    if let Some(v) = a.gamma {
        spec.gamma = v;
    }
    if let Some(v) = a.g {
        spec.g = v;
    }
    if !a.phi.is_empty() {
        spec.phi_poly = concat(&a.phi);
    }
    let state0 = if a.random {
        random_state(&spec, &mut ChaCha8Rng::seed_from_u64(a.seed), a.scale)?
    } else {
        given_state(&spec, &concat(&a.z0), &concat(&a.v0))?
    };
    let times = linspace(0.0, a.t_end, a.samples);
    let sim = simulate(&spec, &state0, &times, a.method, a.tol)?;
    let half = sim.trajectory.states.first().map_or(0, |s| s.len() / 2);
    let rows: Vec<Vec<Complex64>> = sim.trajectory.states.iter().map(|s| s[..half].to_vec()).collect();
    let csv = csv_text(&labels(&spec), &sim.trajectory.times, &rows);
    write_bytes(a.out.as_deref(), csv.as_bytes())?;
    if let Some(svg) = &a.svg {
        write_bytes(Some(svg), svg_text(&rows).as_bytes())?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct Trial {
    trial: usize,
    p: Option<usize>,
    deviation: f64,
    max_abs: f64,
    resamples: usize,
    passed: bool,
}

const MAX_RESAMPLES: usize = 1000;

// the screen below runs on a grid this much finer than the one handed to
// detect_period, so that near-poles between samples are caught
const SCREEN_REFINE: usize = 16;

fn subsample(t: Trajectory, every: usize) -> Trajectory {
    Trajectory {
        times: t.times.into_iter().step_by(every).collect(),
        states: t.states.into_iter().step_by(every).collect(),
    }
}

/// A trajectory is kept when it integrates, its particles stay at least
/// `0.05` apart and every component stays below `50` in modulus.
pub fn acceptable(spec: &ModelSpec, states: &[Vec<Complex64>]) -> bool {
    let n = spec.n;
    states.iter().all(|s| {
        let small = s.iter().all(|z| z.norm() <= 50.0);
        let apart = spec.system.kind() != StateKind::Particle || min_separation(&s[..n]) >= 0.05;
        small && apart
    })
}

pub fn isochrony_cmd(a: &IsochronyArgs, args: &[String]) -> CliResult<bool> {
    let start = Instant::now();
    let spec = match a.system {
        System::IsoGold => ModelSpec::isogold(a.n),
        System::AltIsoGold => ModelSpec::altisogold(a.n),
        System::MatrixUTilde => ModelSpec::matrix_utilde(a.n),
        other => {
            return Err(CliError::Usage(format!(
                "isochrony needs isogold, altisogold or matrix_utilde, not {other}"
            )))
        }
    };
    if a.n == 0 || a.samples_per_period == 0 {
        return Err(CliError::Usage("--n and --samples-per-period must be positive".into()));
    }
    let p_max = a.n;
    let coarse = p_max * a.samples_per_period;
    let times = linspace(0.0, 2.0 * PI * p_max as f64, coarse * SCREEN_REFINE + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut trials = Vec::with_capacity(a.trials);
    for trial in 0..a.trials {
        let mut resamples = 0;
        let traj = loop {
            if resamples > MAX_RESAMPLES {
                return Err(CliError::Core(Error::InvalidInput(
                    "no acceptable random initial state found".into(),
                )));
            }
            let s0 = random_state(&spec, &mut rng, a.scale)?;
            match simulate(&spec, &s0, &times, Method::Direct, a.ode_tol) {
                Ok(sim) if acceptable(&spec, &sim.trajectory.states) => break subsample(sim.trajectory, SCREEN_REFINE),
                _ => resamples += 1,
            }
        };
        let rep = detect_period(&traj, 2.0 * PI, p_max, a.tol)?;
        let passed = match a.system {
            System::IsoGold => rep.p.is_some(),
            _ => rep.p == Some(1),
        };
        trials.push(Trial {
            trial,
            p: rep.p,
            deviation: rep.deviation,
            max_abs: traj.states.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max),
            resamples,
            passed,
        });
    }
    let passed = trials.iter().all(|t| t.passed);
    finish(
        "isochrony",
        args,
        &a.report,
        start,
        passed,
        json!({ "system": a.system.name(), "n": a.n, "trials": trials }),
    )
}

pub fn config_json(c: &EquilibriumConfig, system: ResidualSystem, genuineness: bool) -> CliResult<(Value, bool)> {
    let residual = equilibrium_residual(c, system);
    let zero = residual.iter().all(Zero::is_zero);
    let mut v = json!({
        "family": c.family.name(),
        "n": c.n,
        "nu": c.nu,
        "mu": c.mu,
        "free": c.free.as_ref().map(format_rational),
        "a": c.a.as_ref().map(format_rational),
        "cbar": rationals(&c.cbar),
        "residual_zero": zero,
    });
    if genuineness {
        let g = genuineness_check(c)?;
        v["genuineness"] = json!({
            "verdict": if g.verdict == Genuineness::Genuine { "genuine" } else { "degenerate" },
            "roots": g.roots.iter().map(|(z, k)| json!({ "z": pair(*z), "multiplicity": k })).collect::<Vec<_>>(),
            "necessary_condition": g.necessary_condition,
        });
    }
    Ok((v, zero))
}

pub fn equilibria_cmd(a: &EquilibriaArgs, args: &[String]) -> CliResult<bool> {
    let start = Instant::now();
    if a.n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let (list, system) = if a.iso {
        match a.nu {
            Some(2) => return Err(Error::NuTwoExcluded.into()),
            Some(nu) if !ISO_NU.contains(&nu) => {
                return Err(CliError::Usage(format!("nu must be one of 0, 1, 3, 4, 5, got {nu}")))
            }
            _ => {}
        }
        let free = a.free.clone().map_or_else(nu5_samples, |f| f.0);
        (enumerate_iso_equilibria(a.n, &free), ResidualSystem::Iso)
    } else {
        let free = a.free.clone().map_or_else(free_samples, |f| f.0);
        (enumerate_altgold_equilibria(a.n, &a.a, &free), ResidualSystem::Altgold)
    };
    let mut out = Vec::new();
    let mut all_zero = true;
    for c in list
        .iter()
        .filter(|c| a.nu.is_none_or(|nu| c.nu == nu) && a.mu.is_none_or(|mu| c.mu == mu))
    {
        let (v, zero) = config_json(c, system, a.genuineness)?;
        all_zero &= zero;
        out.push(v);
    }
    finish(
        "equilibria",
        args,
        &a.report,
        start,
        all_zero,
        json!({ "configs": out }),
    )
}

pub fn spectrum_cmd(a: &SpectrumArgs, args: &[String]) -> CliResult<bool> {
    let start = Instant::now();
    let cfg = EquilibriumConfig::iso(a.nu, a.mu, a.n, &a.free)?;
    let numeric = sorted(solve_pencil_numeric(&build_pencil(&cfg)?)?);
    let mut result = json!({
        "nu": a.nu,
        "mu": a.mu,
        "n": a.n,
        "free": cfg.free.as_ref().map(format_rational),
        "cbar": rationals(&cfg.cbar),
        "eigenvalues": numeric.iter().map(|z| pair(*z)).collect::<Vec<_>>(),
    });
    if a.exact {
        let rep = spectral_report(&cfg)?;
        result["exact"] = json!({
            "charpoly": poly_json(&rep.charpoly),
            "integer_roots": bigints(&rep.integer_roots),
            "remainder": poly_json(&rep.remainder),
            "remainder_roots": sorted(rep.remainder_roots.clone()).iter().map(|z| pair(*z)).collect::<Vec<_>>(),
            "all_integers": rep.all_integers,
        });
    }
    finish("spectrum", args, &a.report, start, true, result)
}

pub fn verdict_json(v: &ConjectureVerdict) -> Value {
    json!({
        "holds": v.holds,
        "counterexamples": v.counterexamples.iter().map(|c| json!({
            "nu": c.nu,
            "mu": c.mu,
            "n": c.n,
            "free": c.free.as_ref().map(format_rational),
            "claimed": poly_json(&c.claimed),
            "actual": poly_json(&c.actual),
        })).collect::<Vec<_>>(),
        "matches": v.matches.iter().map(|m| json!({
            "claimed": m.claimed,
            "nearest": pair(m.nearest),
            "distance": m.distance,
        })).collect::<Vec<_>>(),
        "unclaimed": sorted(v.unclaimed.clone()).iter().map(|z| pair(*z)).collect::<Vec<_>>(),
    })
}

pub fn conjecture(which: Which) -> Conjecture {
    match which {
        Which::C215 => Conjecture::C215,
        Which::C217 => Conjecture::C217,
    }
}

pub fn conjecture_cmd(a: &ConjectureArgs, args: &[String]) -> CliResult<bool> {
    let start = Instant::now();
    let free = a.free.clone().map_or_else(nu5_samples, |f| f.0);
    let v = verify_conjectures(conjecture(a.which), a.nu, &a.mu, a.n, &free, a.tol)?;
    let mut result = verdict_json(&v);
    result["cell"] = json!({ "nu": a.nu, "mu": format_rational(&a.mu), "n": a.n });
    finish("conjecture", args, &a.report, start, v.holds, result)
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    cells: usize,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: true,
            cells: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cells += 1;
        if !ok {
            self.passed = false;
            self.failures.push(what());
        }
    }
}

const ISO_NU: [u32; 5] = [0, 1, 3, 4, 5];

pub fn verify_cmd(a: &VerifyArgs, args: &[String]) -> CliResult<bool> {
    let start = Instant::now();
    let n_max = a.n_max;
    let mut checks = Vec::new();

    let mut integral = Check::new("integrality");
    let mut closed = Check::new("closed_forms");
    let mut nu5 = Check::new("nu5_charpoly_independent");
    for n in 1..=n_max {
        for nu in ISO_NU {
            for mu in nu..=n as u32 {
                let reps = verify_integrality(nu, mu, n, &nu5_samples())?;
                for rep in &reps {
                    integral.record(rep.all_integers, || format!("nu={nu} mu={mu} N={n}"));
                }
                if nu == 5 {
                    nu5.record(reps.windows(2).all(|w| w[0].charpoly == w[1].charpoly), || {
                        format!("mu={mu} N={n}")
                    });
                }
                for c in nu5_samples() {
                    let ok = iso_cbar(nu, mu, n, &c)? == cmbar_closed_form(nu, &rat_int(mu as i64), n, &c)?;
                    closed.record(ok, || format!("nu={nu} mu={mu} N={n} c={}", format_rational(&c)));
                }
            }
        }
    }

    let mut iso = Check::new("iso_equilibria");
    let mut plain = Check::new("altgold_equilibria");
    for n in 1..=n_max {
        for c in enumerate_iso_equilibria(n, &nu5_samples()) {
            let ok = equilibrium_residual(&c, ResidualSystem::Iso).iter().all(Zero::is_zero);
            iso.record(ok, || format!("nu={} mu={} N={n}", c.nu, c.mu));
        }
        for a_val in [rat_int(1), rat_int(2), rat(1, 2)] {
            for c in enumerate_altgold_equilibria(n, &a_val, &free_samples()) {
                let ok = equilibrium_residual(&c, ResidualSystem::Altgold)
                    .iter()
                    .all(Zero::is_zero);
                plain.record(ok, || {
                    format!(
                        "{} nu={} mu={} N={n} a={}",
                        c.family.name(),
                        c.nu,
                        c.mu,
                        format_rational(&a_val)
                    )
                });
            }
        }
    }

    let mut large = Check::new("recursion_large_nu");
    for nu in (6..=16u32).filter(|&nu| nu != 8) {
        let ok = matches!(
            solve_iso_recursion(nu, &rat_int(1)),
            Err(Error::RecursionContradiction { .. })
        );
        large.record(ok, || format!("nu={nu}"));
    }

    checks.extend([integral, closed, nu5, iso, plain, large]);
    let passed = checks.iter().all(|c| c.passed);
    finish(
        "verify",
        args,
        &a.report,
        start,
        passed,
        json!({ "n_max": n_max, "checks": checks }),
    )
}
