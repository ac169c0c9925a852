//! Residual checks of identities that tie the formulations together.

use num_complex::Complex64;

use super::initial::build_matrix_initial_data;
use super::model::{CoefficientState, ModelSpec, ParticleState, State, System};
use super::rhs::{altgold_terms, eval_rhs, Coeffs};
use super::simulate::{simulate, Method};
use crate::error::{Error, Result};
use crate::linalg::Trajectory;

/// Which identity to evaluate, with its inputs.
#[derive(Clone, Debug)]
pub enum StructuralCheck<'a> {
    /// Fourth-order ODE for `f = c_1` on a uniformly sampled N = 2
    /// coefficient trajectory of the goldfish model.
    QuarticN2 { traj: &'a Trajectory, a2: Complex64 },
    /// 2x2 minors of `B = Ud(0) + f(U(0))` for goldfish-type data.
    GaugeRank1 {
        spec: &'a ModelSpec,
        state0: &'a ParticleState,
    },
    /// Diagonal of `R^-1 Ud R` against the directly integrated velocities.
    Wnn {
        spec: &'a ModelSpec,
        state0: &'a ParticleState,
        t_samples: &'a [f64],
        tol: f64,
    },
    /// `f'(x) + f'(y) = 2 (f(x) - f(y)) / (x - y)` for quadratic `f`.
    FuncEq {
        f: [Complex64; 3],
        points: &'a [(Complex64, Complex64)],
    },
    /// Consistency of the off-diagonal gauge ansatz along a uniformly
    /// sampled goldfish particle trajectory.
    AnsatzEvb { traj: &'a Trajectory, a2: Complex64 },
    /// Coefficient equations at `m = 0, N+1, N+2`, which must hold
    /// identically.
    Boundary {
        spec: &'a ModelSpec,
        state: &'a CoefficientState,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub check: &'static str,
    pub max_residual: f64,
    pub evaluations: usize,
}

fn uniform_step(times: &[f64]) -> Result<f64> {
    if times.len() < 5 {
        return Err(Error::TrajectoryTooShort {
            needed: 5.0,
            available: times.len() as f64,
        });
    }
    let h = times[1] - times[0];
    if times
        .windows(2)
        .any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0))
    {
        return Err(Error::InvalidInput("finite differences need uniform sampling".into()));
    }
    Ok(h)
}

fn d1(v: &[Complex64], k: usize, h: f64) -> Complex64 {
    (v[k - 2] - v[k - 1] * 8.0 + v[k + 1] * 8.0 - v[k + 2]) / (12.0 * h)
}

fn d2(v: &[Complex64], k: usize, h: f64) -> Complex64 {
    (-v[k - 2] + v[k - 1] * 16.0 - v[k] * 30.0 + v[k + 1] * 16.0 - v[k + 2]) / (12.0 * h * h)
}

/// The quartic in `f` and its first four derivatives.
pub fn quartic_n2(f: [Complex64; 5], a2: Complex64) -> Complex64 {
    let [f0, f1, f2, f3, f4] = f;
    f4 * f0 * f0 - f3 * f1 * f0 * 2.0 - f3 * f0.powi(3) * 2.0 - f2 * f2 * f0 * 2.0
        + f2 * f1 * f1 * 2.0
        + f2 * f1 * f0 * f0 * 4.0
        - f2 * f0.powi(4) * 2.0
        - f1 * f1 * f0.powi(3) * 4.0
        + f1 * f0.powi(5) * 4.0
        + a2 * (f2 * f0 * f0 - f1 * f0.powi(3) * 2.0) * 4.0
}

pub fn structural_residuals(check: &StructuralCheck<'_>) -> Result<ResidualReport> {
    match check {
        StructuralCheck::QuarticN2 { traj, a2 } => {
            let h = uniform_step(&traj.times)?;
            let spec = ModelSpec::altgold(2, *a2);
            let f: Vec<Complex64> = traj.states.iter().map(|s| s[0]).collect();
            let fd: Vec<Complex64> = traj.states.iter().map(|s| s[2]).collect();
            let fdd: Vec<Complex64> = traj
                .states
                .iter()
                .map(|s| Ok(eval_rhs(&spec, &State::from_flat(spec.system.kind(), 2, s)?)?[0]))
                .collect::<Result<_>>()?;
            let mut worst = 0.0f64;
            let mut count = 0;
            for k in 2..f.len() - 2 {
                let r = quartic_n2([f[k], fd[k], fdd[k], d1(&fdd, k, h), d2(&fdd, k, h)], *a2);
                worst = worst.max(r.norm());
                count += 1;
            }
            Ok(ResidualReport {
                check: "quartic_n2",
                max_residual: worst,
                evaluations: count,
            })
        }
        StructuralCheck::GaugeRank1 { spec, state0 } => {
            let init = build_matrix_initial_data(spec, state0)?;
            let n = spec.n;
            let i = Complex64::new(0.0, 1.0);
            let f = |x: Complex64| match spec.system {
                System::Gold => x * x - spec.a2,
                System::IsoGold => x * x - i * x,
                System::GeneralGold => spec.alpha + spec.beta * x + spec.gamma * x * x,
                _ => Complex64::new(0.0, 0.0),
            };
            let mut b = init.udot.clone();
            for k in 0..n {
                b[(k, k)] += f(state0.z[k]);
            }
            let mut worst = 0.0f64;
            let mut count = 0;
            for r1 in 0..n {
                for r2 in r1 + 1..n {
                    for c1 in 0..n {
                        for c2 in c1 + 1..n {
                            let minor = b[(r1, c1)] * b[(r2, c2)] - b[(r1, c2)] * b[(r2, c1)];
                            worst = worst.max(minor.norm());
                            count += 1;
                        }
                    }
                }
            }
            Ok(ResidualReport {
                check: "gauge_rank1",
                max_residual: worst,
                evaluations: count,
            })
        }
        StructuralCheck::Wnn {
            spec,
            state0,
            t_samples,
            tol,
        } => {
            let s0 = State::Particle((*state0).clone());
            let direct = simulate(spec, &s0, t_samples, Method::Direct, *tol)?;
            let spectral = simulate(spec, &s0, t_samples, Method::Spectral, *tol)?;
            let n = spec.n;
            let mut worst = 0.0f64;
            for (a, b) in direct.trajectory.states.iter().zip(&spectral.trajectory.states) {
                for k in 0..n {
                    worst = worst.max((a[n + k] - b[n + k]).norm());
                }
            }
            Ok(ResidualReport {
                check: "wnn",
                max_residual: worst,
                evaluations: n * t_samples.len(),
            })
        }
        StructuralCheck::FuncEq { f, points } => {
            let ev = |x: Complex64| f[0] + f[1] * x + f[2] * x * x;
            let dv = |x: Complex64| f[1] + f[2] * x * 2.0;
            let worst = points
                .iter()
                .map(|&(x, y)| (dv(x) + dv(y) - (ev(x) - ev(y)) * 2.0 / (x - y)).norm())
                .fold(0.0, f64::max);
            Ok(ResidualReport {
                check: "funceq",
                max_residual: worst,
                evaluations: points.len(),
            })
        }
        StructuralCheck::AnsatzEvb { traj, a2 } => {
            let h = uniform_step(&traj.times)?;
            let n = traj.states[0].len() / 2;
            let mut worst = 0.0f64;
            let mut count = 0;
            for k in 2..traj.len() - 2 {
                let (z, v) = traj.states[k].split_at(n);
                // accelerations from the sampled velocities, not from the model
                let acc: Vec<Complex64> = (0..n)
                    .map(|j| {
                        let col: Vec<Complex64> = traj.states[k - 2..=k + 2].iter().map(|s| s[n + j]).collect();
                        d1(&col, 2, h)
                    })
                    .collect();
                let s: Vec<Complex64> = (0..n).map(|j| v[j] + z[j] * z[j] - a2).collect();
                let sdot: Vec<Complex64> = (0..n).map(|j| acc[j] + z[j] * v[j] * 2.0).collect();
                for p in 0..n {
                    for q in (0..n).filter(|&q| q != p) {
                        let dz = z[p] - z[q];
                        let dv = v[p] - v[q];
                        let lhs = (sdot[p] / s[p] + sdot[q] / s[q]) / 2.0 - dv / dz;
                        let sum: Complex64 = (0..n)
                            .filter(|&l| l != p && l != q)
                            .map(|l| (z[p] + z[q] - z[l] * 2.0) * s[l] / ((z[p] - z[l]) * (z[l] - z[q])))
                            .sum();
                        let rhs = -dv * 2.0 / dz - sum;
                        worst = worst.max((lhs - rhs).norm());
                        count += 1;
                    }
                }
            }
            Ok(ResidualReport {
                check: "ansatz_evb",
                max_residual: worst,
                evaluations: count,
            })
        }
        StructuralCheck::Boundary { spec, state } => {
            let n = spec.n as i64;
            let a2 = if spec.system == System::GammaTau {
                Complex64::new(0.0, 0.0)
            } else {
                spec.a2
            };
            let k = Coeffs {
                c: &state.c,
                cdot: &state.cdot,
            };
            let worst = [0, n + 1, n + 2]
                .into_iter()
                .map(|m| altgold_terms(&k, a2, m).norm())
                .fold(0.0, f64::max);
            Ok(ResidualReport {
                check: "boundary",
                max_residual: worst,
                evaluations: 3,
            })
        }
    }
}
