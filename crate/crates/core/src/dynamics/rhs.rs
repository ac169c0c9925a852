//! Right-hand sides of every evolution equation.

use num_complex::Complex64;

use super::model::{MatrixFlowState, ModelSpec, State, StateKind, System};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Separations below this raise [`Error::Collision`].
pub const COLLISION_THRESHOLD: f64 = 1e-10;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
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

fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(czero(), |acc, c| acc * x + c)
}

/// Coefficient sequence with the boundary conventions `c_0 = 1`,
/// `c_j = 0` for `j < 0` or `j > N`.
pub(crate) struct Coeffs<'a> {
    pub c: &'a [Complex64],
    pub cdot: &'a [Complex64],
}

impl Coeffs<'_> {
    fn n(&self) -> i64 {
        self.c.len() as i64
    }

    pub fn c(&self, j: i64) -> Complex64 {
        match j {
            0 => Complex64::new(1.0, 0.0),
            j if j < 0 || j > self.n() => czero(),
            j => self.c[(j - 1) as usize],
        }
    }

    pub fn cd(&self, j: i64) -> Complex64 {
        if j < 1 || j > self.n() {
            czero()
        } else {
            self.cdot[(j - 1) as usize]
        }
    }
}

/// Left-hand side of the coefficient form of the goldfish equations at
/// index `m`, without the `cddot_m` term.
pub(crate) fn altgold_terms(k: &Coeffs<'_>, a2: Complex64, m: i64) -> Complex64 {
    let n = k.n();
    let mf = m as f64;
    let a4 = a2 * a2;
    k.cd(m + 1) * (2.0 * (mf - 1.0)) - k.c(1) * k.cd(m) * 2.0
        + a2 * k.cd(m - 1) * (2.0 * (n + 1 - m) as f64)
        + k.c(m + 2) * ((m + 2) * (m - 3)) as f64
        - k.c(1) * k.c(m + 1) * (2.0 * (mf - 1.0))
        + (a2 * (m * (n + 2 - m)) as f64 + k.cd(1) - k.c(1) * k.c(1) + k.c(2) * 3.0) * k.c(m) * 2.0
        - a2 * k.c(1) * k.c(m - 1) * (2.0 * (n + 1 - m) as f64)
        + a4 * k.c(m - 2) * ((n + 2 - m) * (n + 1 - m)) as f64
}

/// Same for the isochronous coefficient system.
pub(crate) fn altisogold_terms(k: &Coeffs<'_>, m: i64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let mf = m as f64;
    i * k.cd(m + 1) * (2.0 * (mf - 1.0))
        - i * k.cd(m) * (2.0 * mf + 1.0 + k.c(1) * 2.0)
        - k.c(m + 2) * ((m + 2) * (m - 3)) as f64
        + k.c(m + 1) * ((mf + 1.0 + k.c(1)) * (2.0 * (mf - 1.0)))
        + (-mf * (mf + 1.0) + i * k.cd(1) * 2.0 - k.c(1) * (2.0 * (mf - 1.0)) + k.c(1) * k.c(1) * 2.0 - k.c(2) * 6.0)
            * k.c(m)
}

fn particle_acc(spec: &ModelSpec, z: &[Complex64], zd: &[Complex64], out: &mut [Complex64]) -> Result<()> {
    check_distinct(z)?;
    let n = z.len();
    let i = Complex64::new(0.0, 1.0);
    match spec.system {
        System::Gold | System::IsoGold | System::GeneralGold => {
            // s_n = zdot_n + f(z_n) for the system's f
            let s: Vec<Complex64> = (0..n)
                .map(|k| match spec.system {
                    System::Gold => zd[k] + z[k] * z[k] - spec.a2,
                    System::IsoGold => zd[k] - i * z[k] + z[k] * z[k],
                    _ => zd[k] + horner(&spec.f_poly(), z[k]),
                })
                .collect();
            for k in 0..n {
                let base = match spec.system {
                    System::Gold => z[k] * (z[k] * z[k] - spec.a2) * 2.0,
                    System::IsoGold => i * zd[k] * 3.0 + z[k] * 2.0 + z[k] * z[k] * z[k] * 2.0,
                    _ => horner(&spec.general_phi(), z[k]),
                };
                let pair: Complex64 = (0..n).filter(|&m| m != k).map(|m| s[k] * s[m] / (z[k] - z[m])).sum();
                out[k] = base + pair * 2.0;
            }
        }
        System::Rcm | System::Veselov => {
            let g2 = spec.g * spec.g;
            for k in 0..n {
                let pair: Complex64 = (0..n)
                    .filter(|&m| m != k)
                    .map(|m| {
                        let d = z[k] - z[m];
                        (d * d * d).inv()
                    })
                    .sum();
                out[k] = horner(&spec.phi_poly, z[k]) - g2 * pair * 2.0;
            }
        }
        _ => unreachable!(),
    }
    Ok(())
}

fn coefficient_acc(spec: &ModelSpec, c: &[Complex64], cd: &[Complex64], out: &mut [Complex64]) {
    let k = Coeffs { c, cdot: cd };
    for m in 1..=c.len() as i64 {
        out[(m - 1) as usize] = -match spec.system {
            System::AltGold => altgold_terms(&k, spec.a2, m),
            System::GammaTau => altgold_terms(&k, czero(), m),
            System::AltIsoGold => altisogold_terms(&k, m),
            _ => unreachable!(),
        };
    }
}

/// `Udd` for the matrix flows.
pub fn matrix_acceleration(spec: &ModelSpec, u: &ComplexMatrix, udot: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = spec.n;
    if !u.is_square() || u.rows() != n || udot.rows() != n || !udot.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: u.rows(),
        });
    }
    Ok(match spec.system {
        System::MatrixU => {
            let u2 = u * u;
            let inner = &u2 - &ComplexMatrix::identity(n).scale(spec.a2);
            (u * &inner).scale(Complex64::new(2.0, 0.0))
        }
        System::MatrixUTilde => {
            let u3 = &(u * u) * u;
            let lin = &udot.scale(Complex64::new(0.0, 3.0)) + &u.scale(Complex64::new(2.0, 0.0));
            &lin + &u3.scale(Complex64::new(2.0, 0.0))
        }
        System::MatrixGeneral => u.poly_eval(&spec.phi_poly),
        other => {
            return Err(Error::Unsupported(format!("{other} is not a matrix flow")));
        }
    })
}

/// Second derivatives on the flat layout `[x, v]`, written into `out`
/// (length `flat_len / 2`).
pub fn second_derivative(spec: &ModelSpec, x: &[Complex64], v: &[Complex64], out: &mut [Complex64]) -> Result<()> {
    let half = spec.flat_len() / 2;
    if x.len() != half || v.len() != half || out.len() != half {
        return Err(Error::DimensionMismatch {
            expected: half,
            found: x.len(),
        });
    }
    match spec.system.kind() {
        StateKind::Particle => particle_acc(spec, x, v, out),
        StateKind::Coefficient => {
            coefficient_acc(spec, x, v, out);
            Ok(())
        }
        StateKind::Matrix => {
            let n = spec.n;
            let u = ComplexMatrix::from_row_major(n, n, x.to_vec())?;
            let ud = ComplexMatrix::from_row_major(n, n, v.to_vec())?;
            out.copy_from_slice(matrix_acceleration(spec, &u, &ud)?.as_slice());
            Ok(())
        }
    }
}

/// First-order form `d/dt [x, v] = [v, a(x, v)]` for the integrator.
pub fn first_order_rhs(spec: &ModelSpec) -> impl FnMut(f64, &[Complex64], &mut [Complex64]) -> Result<()> + '_ {
    move |_t, y, dy| {
        let half = y.len() / 2;
        let (x, v) = y.split_at(half);
        let (dx, dv) = dy.split_at_mut(half);
        dx.copy_from_slice(v);
        second_derivative(spec, x, v, dv)
    }
}

/// The exact right-hand side of `spec`'s equation at `state`: the second
/// derivative, flattened (row-major for matrices).
pub fn eval_rhs(spec: &ModelSpec, state: &State) -> Result<Vec<Complex64>> {
    if state.kind() != spec.system.kind() || state.n() != spec.n {
        return Err(Error::InvalidInput(format!(
            "state of kind {:?} and size {} does not match {} with N = {}",
            state.kind(),
            state.n(),
            spec.system,
            spec.n
        )));
    }
    let flat = state.flatten();
    let half = flat.len() / 2;
    let mut out = vec![czero(); half];
    second_derivative(spec, &flat[..half], &flat[half..], &mut out)?;
    Ok(out)
}

/// Matrix-shaped convenience wrapper around [`eval_rhs`].
pub fn eval_matrix_rhs(spec: &ModelSpec, state: &MatrixFlowState) -> Result<ComplexMatrix> {
    matrix_acceleration(spec, &state.u, &state.udot)
}
