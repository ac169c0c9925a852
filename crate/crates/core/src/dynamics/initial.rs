//! Initial data of the matrix flows whose eigenvalues solve the particle
//! and coefficient systems.

use num_complex::Complex64;

use super::model::{CoefficientState, MatrixFlowState, ModelSpec, ParticleState, System};
use super::rhs::COLLISION_THRESHOLD;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::polynomials::{find_roots, zero_velocities, Convention, MonicPolynomial};

/// Matrix flow whose eigenvalues reproduce `spec`, if there is one. For the
/// rCM model the flow is `Udd = -U`, solved in closed form.
pub fn matrix_companion(spec: &ModelSpec) -> Option<ModelSpec> {
    let n = spec.n;
    match spec.system {
        System::Gold | System::AltGold => Some(ModelSpec::matrix_u(n, spec.a2)),
        System::GammaTau => Some(ModelSpec::matrix_u(n, Complex64::new(0.0, 0.0))),
        System::IsoGold | System::AltIsoGold => Some(ModelSpec::matrix_utilde(n)),
        System::GeneralGold => Some(ModelSpec::matrix_general(n, spec.general_phi())),
        System::Veselov | System::Rcm => Some(ModelSpec::matrix_general(n, spec.phi_poly.clone())),
        _ => None,
    }
}

/// Particle system whose zeros the coefficient system tracks.
pub fn particle_counterpart(spec: &ModelSpec) -> Option<ModelSpec> {
    match spec.system {
        System::AltGold => Some(ModelSpec::gold(spec.n, spec.a2)),
        System::GammaTau => Some(ModelSpec::gold(spec.n, Complex64::new(0.0, 0.0))),
        System::AltIsoGold => Some(ModelSpec::isogold(spec.n)),
        _ => None,
    }
}

/// Convention in which a coefficient system stores its coefficients.
pub fn coefficient_convention(system: System) -> Convention {
    if system == System::AltIsoGold {
        Convention::Tilde
    } else {
        Convention::Plain
    }
}

/// Zeros and zero velocities of a coefficient state.
pub fn coefficients_to_particles(system: System, state: &CoefficientState) -> Result<ParticleState> {
    let conv = coefficient_convention(system);
    let poly = MonicPolynomial::new(&state.c, conv);
    let z = find_roots(&poly, 1e-15)?;
    let zdot = zero_velocities(&z, &state.cdot, conv)?;
    Ok(ParticleState { z, zdot })
}

fn check_distinct(z: &[Complex64]) -> Result<()> {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let d = (z[i] - z[j]).norm();
            if d < COLLISION_THRESHOLD {
                return Err(Error::Collision { i, j, separation: d });
            }
        }
    }
    Ok(())
}

/// `U(0) = diag(z)` and `Ud(0)` for a particle system with a matrix flow.
pub fn build_matrix_initial_data(spec: &ModelSpec, state0: &ParticleState) -> Result<MatrixFlowState> {
    build_matrix_initial_data_with_signs(spec, state0, &vec![false; state0.z.len()])
}

/// As [`build_matrix_initial_data`], flipping the square root `b_n` wherever
/// `flip[n]` is set.
pub fn build_matrix_initial_data_with_signs(
    spec: &ModelSpec,
    state0: &ParticleState,
    flip: &[bool],
) -> Result<MatrixFlowState> {
    let n = state0.z.len();
    if n != spec.n || state0.zdot.len() != n || flip.len() != n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            found: n,
        });
    }
    let (z, zd) = (&state0.z, &state0.zdot);
    check_distinct(z)?;
    let i = Complex64::new(0.0, 1.0);
    let u = ComplexMatrix::from_diag(z);
    let udot = match spec.system {
        System::Rcm | System::Veselov => {
            ComplexMatrix::from_fn(n, n, |a, b| if a == b { zd[a] } else { -spec.g / (z[a] - z[b]) })
        }
        System::Gold | System::IsoGold | System::GeneralGold => {
            // s_n = zdot_n + f(z_n), b_n = sqrt(s_n); the diagonal must equal zdot
            let s: Vec<Complex64> = (0..n)
                .map(|k| match spec.system {
                    System::Gold => zd[k] + z[k] * z[k] - spec.a2,
                    System::IsoGold => zd[k] - i * z[k] + z[k] * z[k],
                    _ => zd[k] + spec.alpha + spec.beta * z[k] + spec.gamma * z[k] * z[k],
                })
                .collect();
            let b: Vec<Complex64> = s
                .iter()
                .zip(flip)
                .map(|(v, &f)| if f { -v.sqrt() } else { v.sqrt() })
                .collect();
            ComplexMatrix::from_fn(n, n, |p, q| {
                let dyad = b[p] * b[q];
                if p == q {
                    zd[p] - s[p] + dyad
                } else {
                    dyad
                }
            })
        }
        other => {
            return Err(Error::Unsupported(format!(
                "{other} has no particle-to-matrix initial data"
            )))
        }
    };
    Ok(MatrixFlowState { u, udot })
}
