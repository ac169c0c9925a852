//! Evolution equations satisfied by the monic polynomial whose zeros move
//! according to the particle systems.

use num_complex::Complex64;

use super::model::{CoefficientState, ModelSpec, State, System};
use super::rhs::eval_rhs;
use crate::error::{Error, Result};
use crate::linalg::Trajectory;
use crate::polynomials::i_pow;

/// How `cddot` is obtained along a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimeDerivative {
    /// Centered 5-point stencil on `cdot`; needs uniform sampling.
    FiniteDifference,
    /// The model's own right-hand side.
    Substitution,
}

struct Jet {
    psi: Complex64,
    z1: Complex64,
    z2: Complex64,
    t1: Complex64,
    tz: Complex64,
    tt: Complex64,
}

fn jet(plain_c: &[Complex64], plain_cd: &[Complex64], plain_cdd: &[Complex64], z: Complex64) -> Jet {
    let n = plain_c.len() - 1;
    let zero = Complex64::new(0.0, 0.0);
    let mut j = Jet {
        psi: zero,
        z1: zero,
        z2: zero,
        t1: zero,
        tz: zero,
        tt: zero,
    };
    for m in 0..=n {
        let p = (n - m) as i32;
        let pw = |k: i32| if p - k >= 0 { z.powi(p - k) } else { zero };
        let pf = p as f64;
        j.psi += plain_c[m] * pw(0);
        j.z1 += plain_c[m] * pf * pw(1);
        j.z2 += plain_c[m] * pf * (pf - 1.0) * pw(2);
        j.t1 += plain_cd[m] * pw(0);
        j.tz += plain_cd[m] * pf * pw(1);
        j.tt += plain_cdd[m] * pw(0);
    }
    j
}

/// Left-hand side of the polynomial evolution equation at one point `z`.
/// `c`, `cdot`, `cddot` hold indices `1..N` in the system's convention.
pub fn pde_residual_at(
    spec: &ModelSpec,
    c: &[Complex64],
    cdot: &[Complex64],
    cddot: &[Complex64],
    z: Complex64,
) -> Result<Complex64> {
    let n = spec.n;
    if c.len() != n || cdot.len() != n || cddot.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.len(),
        });
    }
    let to_plain = |v: &[Complex64], lead: Complex64, tilde: bool| -> Vec<Complex64> {
        std::iter::once(lead)
            .chain(
                v.iter()
                    .enumerate()
                    .map(|(k, x)| if tilde { x * i_pow(k as i64 + 1) } else { *x }),
            )
            .collect()
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let nf = n as f64;
    let c1 = c[0];
    let c2 = if n >= 2 { c[1] } else { zero };
    let cd1 = cdot[0];
    match spec.system {
        System::AltGold | System::GammaTau => {
            let a2 = if spec.system == System::GammaTau { zero } else { spec.a2 };
            let j = jet(
                &to_plain(c, one, false),
                &to_plain(cdot, zero, false),
                &to_plain(cddot, zero, false),
                z,
            );
            let q = z * z - a2;
            Ok(
                j.tt - q * j.tz * 2.0 + (z * (nf - 2.0) - c1) * j.t1 * 2.0 + q * q * j.z2
                    - (z * (nf - 3.0) - c1) * q * j.z1 * 2.0
                    + (z * z * (nf * (nf - 5.0)) - c1 * z * (2.0 * (nf - 2.0))
                        + (a2 * (2.0 * nf) + cd1 - c1 * c1 + c2 * 3.0) * 2.0)
                        * j.psi,
            )
        }
        System::AltIsoGold => {
            let j = jet(
                &to_plain(c, one, true),
                &to_plain(cdot, zero, true),
                &to_plain(cddot, zero, true),
                z,
            );
            let w = z * (z - i);
            Ok(j.tt - w * j.tz * 2.0
                + (z * (2.0 * (nf - 2.0)) - i * (2.0 * nf + 1.0) - i * c1 * 2.0) * j.t1
                + w * w * j.z2
                - w * ((z - i) * nf - z * 3.0 - i * c1) * j.z1 * 2.0
                + (z * z * (nf * (nf - 5.0))
                    - i * z * (2.0 * nf * (nf - 2.0))
                    - nf * (nf + 1.0)
                    - i * c1 * z * (2.0 * (nf - 2.0))
                    - c1 * (2.0 * (nf - 1.0))
                    + (i * cd1 + c1 * c1 - c2 * 3.0) * 2.0)
                    * j.psi)
        }
        other => Err(Error::Unsupported(format!(
            "no polynomial evolution equation for {other}"
        ))),
    }
}

/// Largest `|residual|` over the interior samples of a coefficient
/// trajectory and the points `z_samples`.
pub fn pde_residual(spec: &ModelSpec, traj: &Trajectory, z_samples: &[Complex64], mode: TimeDerivative) -> Result<f64> {
    let n = spec.n;
    let len = traj.len();
    let split = |s: &[Complex64]| -> (Vec<Complex64>, Vec<Complex64>) { (s[..n].to_vec(), s[n..].to_vec()) };
    let range: Vec<usize> = match mode {
        TimeDerivative::Substitution => (0..len).collect(),
        TimeDerivative::FiniteDifference => {
            if len < 5 {
                return Err(Error::TrajectoryTooShort {
                    needed: 5.0,
                    available: len as f64,
                });
            }
            let h = traj.times[1] - traj.times[0];
            if traj
                .times
                .windows(2)
                .any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0))
            {
                return Err(Error::InvalidInput("finite differences need uniform sampling".into()));
            }
            (2..len - 2).collect()
        }
    };
    let mut worst = 0.0f64;
    for &k in &range {
        let (c, cd) = split(&traj.states[k]);
        let cdd = match mode {
            TimeDerivative::Substitution => eval_rhs(
                spec,
                &State::Coefficient(CoefficientState {
                    c: c.clone(),
                    cdot: cd.clone(),
                }),
            )?,
            TimeDerivative::FiniteDifference => {
                let h = traj.times[1] - traj.times[0];
                (0..n)
                    .map(|m| {
                        let v = |o: usize| traj.states[o][n + m];
                        (v(k - 2) - v(k - 1) * 8.0 + v(k + 1) * 8.0 - v(k + 2)) / (12.0 * h)
                    })
                    .collect()
            }
        };
        for &z in z_samples {
            worst = worst.max(pde_residual_at(spec, &c, &cd, &cdd, z)?.norm());
        }
    }
    Ok(worst)
}
