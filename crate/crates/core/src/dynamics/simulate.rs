//! Direct integration and spectral (matrix-flow) solution of the models.

use num_complex::Complex64;

use super::initial::{
    build_matrix_initial_data, coefficient_convention, coefficients_to_particles, matrix_companion,
    particle_counterpart,
};
use super::model::{MatrixFlowState, ModelSpec, State, StateKind, System};
use super::rhs::first_order_rhs;
use crate::error::{Error, Result};
use crate::linalg::{
    eigenvalue_velocity, eigenvalues, integrate_ode, track_trajectories, ComplexMatrix, TrackedPaths, Trajectory,
};
use crate::polynomials::i_pow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Spectral,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "direct" => Ok(Method::Direct),
            "spectral" => Ok(Method::Spectral),
            _ => Err(Error::InvalidInput(format!("unknown method {s:?}"))),
        }
    }
}

/// Result of [`simulate`]. States use the flat `[x, v]` layout of
/// [`State::flatten`]; particle paths are also returned for spectral runs.
#[derive(Clone, Debug, PartialEq)]
pub struct Simulation {
    pub trajectory: Trajectory,
    pub paths: Option<TrackedPaths>,
}

const MAX_SUBDIVISION: usize = 512;

/// Evolves `state0` (given at `t = 0`) and samples it at `t_samples`.
pub fn simulate(spec: &ModelSpec, state0: &State, t_samples: &[f64], method: Method, tol: f64) -> Result<Simulation> {
    if state0.kind() != spec.system.kind() || state0.n() != spec.n {
        return Err(Error::InvalidInput(format!(
            "initial state does not match {} with N = {}",
            spec.system, spec.n
        )));
    }
    match method {
        Method::Direct => {
            let trajectory = integrate_ode(first_order_rhs(spec), &state0.flatten(), 0.0, t_samples, tol)?;
            Ok(Simulation {
                trajectory,
                paths: None,
            })
        }
        Method::Spectral => match spec.system.kind() {
            StateKind::Particle => spectral_particles(spec, state0, t_samples, tol),
            StateKind::Coefficient => spectral_coefficients(spec, state0, t_samples, tol),
            StateKind::Matrix => Err(Error::Unsupported(format!(
                "{} is already a matrix flow; use the direct method",
                spec.system
            ))),
        },
    }
}

/// Matrix flow sampled at `times` (starting from `t = 0`).
pub fn evolve_matrix_flow(
    spec: &ModelSpec,
    init: &MatrixFlowState,
    times: &[f64],
    tol: f64,
) -> Result<Vec<MatrixFlowState>> {
    let n = init.u.rows();
    if spec.system == System::Rcm {
        return Ok(times
            .iter()
            .map(|&t| {
                let (s, c) = t.sin_cos();
                MatrixFlowState {
                    u: &init.u.scale(c.into()) + &init.udot.scale(s.into()),
                    udot: &init.udot.scale(c.into()) - &init.u.scale(s.into()),
                }
            })
            .collect());
    }
    let flow =
        matrix_companion(spec).ok_or_else(|| Error::Unsupported(format!("{} has no matrix flow", spec.system)))?;
    let y0 = State::Matrix(init.clone()).flatten();
    let traj = integrate_ode(first_order_rhs(&flow), &y0, 0.0, times, tol)?;
    traj.states
        .iter()
        .map(|s| match State::from_flat(StateKind::Matrix, n, s)? {
            State::Matrix(m) => Ok(m),
            _ => unreachable!(),
        })
        .collect()
}

fn refined_grid(t_samples: &[f64], sub: usize) -> (Vec<f64>, Vec<usize>) {
    let mut grid = vec![0.0];
    let mut marks = Vec::with_capacity(t_samples.len());
    let mut prev = 0.0;
    for &t in t_samples {
        if t > prev {
            for k in 1..=sub {
                grid.push(prev + (t - prev) * k as f64 / sub as f64);
            }
            *grid.last_mut().unwrap() = t;
        }
        marks.push(grid.len() - 1);
        prev = t;
    }
    (grid, marks)
}

fn spectral_particles(spec: &ModelSpec, state0: &State, t_samples: &[f64], tol: f64) -> Result<Simulation> {
    let State::Particle(p0) = state0 else { unreachable!() };
    let init = build_matrix_initial_data(spec, p0)?;
    let mut sub = 4usize;
    loop {
        let (grid, marks) = refined_grid(t_samples, sub);
        let states = evolve_matrix_flow(spec, &init, &grid, tol)?;
        let mut frames: Vec<Vec<Complex64>> = Vec::with_capacity(grid.len());
        frames.push(p0.z.clone());
        for s in &states[1..] {
            frames.push(eigenvalues(&s.u)?);
        }
        match track_trajectories(&frames, &grid) {
            Ok(fine) => {
                let n = spec.n;
                let mut out = Trajectory {
                    times: Vec::with_capacity(t_samples.len()),
                    states: Vec::with_capacity(t_samples.len()),
                };
                let mut paths: Vec<Vec<Complex64>> = vec![Vec::new(); n];
                let mut indices: Vec<Vec<usize>> = vec![Vec::new(); n];
                for (&t, &f) in t_samples.iter().zip(&marks) {
                    let mut flat = Vec::with_capacity(2 * n);
                    let z: Vec<Complex64> = (0..n).map(|k| fine.paths[k][f]).collect();
                    let zd: Vec<Complex64> = if f == 0 {
                        p0.zdot.clone()
                    } else {
                        z.iter()
                            .map(|&lam| eigenvalue_velocity(&states[f].u, &states[f].udot, lam))
                            .collect::<Result<_>>()?
                    };
                    flat.extend_from_slice(&z);
                    flat.extend_from_slice(&zd);
                    out.times.push(t);
                    out.states.push(flat);
                    for k in 0..n {
                        paths[k].push(z[k]);
                        indices[k].push(fine.indices[k][f]);
                    }
                }
                let tracked = TrackedPaths {
                    times: t_samples.to_vec(),
                    paths,
                    indices,
                    monodromy: fine.monodromy,
                };
                return Ok(Simulation {
                    trajectory: out,
                    paths: Some(tracked),
                });
            }
            Err(err @ Error::AmbiguousTracking { .. }) => {
                sub *= 2;
                if sub > MAX_SUBDIVISION {
                    return Err(err);
                }
            }
            Err(other) => return Err(other),
        }
    }
}

/// Coefficients `c_1..c_N` of `det(z I - U)` and their time derivatives,
/// by the Faddeev–LeVerrier recursion and its derivative.
pub fn charpoly_with_derivative(u: &ComplexMatrix, udot: &ComplexMatrix) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = u.rows();
    let id = ComplexMatrix::identity(n);
    let mut m = ComplexMatrix::zeros(n, n);
    let mut md = ComplexMatrix::zeros(n, n);
    let mut c_prev = Complex64::new(1.0, 0.0);
    let mut cd_prev = Complex64::new(0.0, 0.0);
    let mut c = Vec::with_capacity(n);
    let mut cd = Vec::with_capacity(n);
    for k in 1..=n {
        let m_new = &(u * &m) + &id.scale(c_prev);
        let md_new = &(&(udot * &m) + &(u * &md)) + &id.scale(cd_prev);
        let ck = -(u * &m_new).trace() / k as f64;
        let cdk = -((udot * &m_new).trace() + (u * &md_new).trace()) / k as f64;
        c.push(ck);
        cd.push(cdk);
        m = m_new;
        md = md_new;
        c_prev = ck;
        cd_prev = cdk;
    }
    (c, cd)
}

fn spectral_coefficients(spec: &ModelSpec, state0: &State, t_samples: &[f64], tol: f64) -> Result<Simulation> {
    let State::Coefficient(c0) = state0 else { unreachable!() };
    let particles = coefficients_to_particles(spec.system, c0)?;
    let counterpart = particle_counterpart(spec).expect("coefficient systems have a particle counterpart");
    let init = build_matrix_initial_data(&counterpart, &particles)?;
    let states = evolve_matrix_flow(&counterpart, &init, t_samples, tol)?;
    let tilde = coefficient_convention(spec.system) == crate::polynomials::Convention::Tilde;
    let out_states = states
        .iter()
        .map(|s| {
            let (mut c, mut cd) = charpoly_with_derivative(&s.u, &s.udot);
            if tilde {
                for m in 0..c.len() {
                    let f = i_pow(-(m as i64 + 1));
                    c[m] *= f;
                    cd[m] *= f;
                }
            }
            c.into_iter().chain(cd).collect()
        })
        .collect();
    Ok(Simulation {
        trajectory: Trajectory {
            times: t_samples.to_vec(),
            states: out_states,
        },
        paths: None,
    })
}
