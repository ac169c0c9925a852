//! The change of variables `z(t) = e^{it} zeta(tau)`, `tau = i (1 - e^{it})`
//! that turns the solvable models into isochronous ones.

use num_complex::Complex64;

use super::model::{CoefficientState, MatrixFlowState, ModelSpec, ParticleState, State, StateKind};
use super::rhs::second_derivative;
use crate::error::{Error, Result};
use crate::linalg::{integrate_ode, Trajectory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrickDirection {
    /// tau-world solution to t-world isochronous solution.
    Forward,
    /// The inverse map, for real `t`.
    Backward,
}

pub fn trick_tau(t: f64) -> Complex64 {
    Complex64::new(0.0, 1.0) * (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, t))
}

fn minus_i_pow(m: usize) -> Complex64 {
    crate::polynomials::i_pow(-(m as i64))
}

fn map_pair(direction: TrickDirection, e: Complex64, x: Complex64, v: Complex64) -> (Complex64, Complex64) {
    let i = Complex64::new(0.0, 1.0);
    match direction {
        TrickDirection::Forward => (e * x, i * e * x + e * e * v),
        TrickDirection::Backward => (x / e, (v - i * x) / (e * e)),
    }
}

/// Transforms one state sampled at time `t`.
pub fn trick_transform(direction: TrickDirection, t: f64, state: &State) -> Result<State> {
    let e = Complex64::from_polar(1.0, t);
    let i = Complex64::new(0.0, 1.0);
    Ok(match state {
        State::Particle(p) => {
            let (z, zdot) =
                p.z.iter()
                    .zip(&p.zdot)
                    .map(|(&x, &v)| map_pair(direction, e, x, v))
                    .unzip();
            State::Particle(ParticleState { z, zdot })
        }
        State::Matrix(m) => {
            let n = m.u.rows();
            let pairs: Vec<(Complex64, Complex64)> =
                m.u.as_slice()
                    .iter()
                    .zip(m.udot.as_slice())
                    .map(|(&x, &v)| map_pair(direction, e, x, v))
                    .collect();
            let (u, udot): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
            State::Matrix(MatrixFlowState {
                u: crate::linalg::ComplexMatrix::from_row_major(n, n, u)?,
                udot: crate::linalg::ComplexMatrix::from_row_major(n, n, udot)?,
            })
        }
        State::Coefficient(c) => {
            let mut out_c = Vec::with_capacity(c.c.len());
            let mut out_cd = Vec::with_capacity(c.c.len());
            for (idx, (&x, &v)) in c.c.iter().zip(&c.cdot).enumerate() {
                let m = idx + 1;
                let f = minus_i_pow(m) * e.powu(m as u32);
                match direction {
                    TrickDirection::Forward => {
                        let ct = f * x;
                        out_c.push(ct);
                        out_cd.push(i * m as f64 * ct + f * e * v);
                    }
                    TrickDirection::Backward => {
                        out_c.push(x / f);
                        out_cd.push((v - i * m as f64 * x) / (f * e));
                    }
                }
            }
            State::Coefficient(CoefficientState { c: out_c, cdot: out_cd })
        }
    })
}

/// Applies [`trick_transform`] sample by sample to a flat trajectory.
pub fn trick_transform_trajectory(
    direction: TrickDirection,
    traj: &Trajectory,
    kind: StateKind,
    n: usize,
) -> Result<Trajectory> {
    let states = traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(&t, flat)| Ok(trick_transform(direction, t, &State::from_flat(kind, n, flat)?)?.flatten()))
        .collect::<Result<_>>()?;
    Ok(Trajectory {
        times: traj.times.clone(),
        states,
    })
}

/// Solves a tau-world model along the circle `tau(t)`, `t` real, from its
/// state at `tau = 0`. The result is indexed by `t` and holds
/// `(zeta(tau(t)), zeta'(tau(t)))`.
pub fn integrate_tau_path(spec: &ModelSpec, state0: &State, t_samples: &[f64], tol: f64) -> Result<Trajectory> {
    if state0.kind() != spec.system.kind() || state0.n() != spec.n {
        return Err(Error::InvalidInput("state does not match the tau-world model".into()));
    }
    let rhs = |t: f64, y: &[Complex64], dy: &mut [Complex64]| -> Result<()> {
        let e = Complex64::from_polar(1.0, t);
        let half = y.len() / 2;
        let (x, v) = y.split_at(half);
        let (dx, dv) = dy.split_at_mut(half);
        second_derivative(spec, x, v, dv)?;
        for k in 0..half {
            dx[k] = v[k] * e;
            dv[k] *= e;
        }
        Ok(())
    };
    integrate_ode(rhs, &state0.flatten(), 0.0, t_samples, tol)
}
