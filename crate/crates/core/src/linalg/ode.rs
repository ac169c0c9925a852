//! Adaptive Dormand–Prince 5(4) integration of complex first-order systems
//! with fourth-order dense output at requested sample times.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Sampled solution of an ODE: `states[k]` is the state at `times[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex64>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> Option<&[Complex64]> {
        self.states.last().map(Vec::as_slice)
    }
}

#[derive(Clone, Debug)]
pub struct OdeOptions {
    pub tol: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            h_min: 1e-12,
            h_max: f64::INFINITY,
            max_steps: 20_000_000,
        }
    }
}

pub const TOL_MIN: f64 = 1e-14;
pub const TOL_MAX: f64 = 1e-4;

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// difference between the 5th and embedded 4th order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn finite(v: &[Complex64]) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

// coefficients of the fourth-order continuous extension
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// Dense output inside an accepted step from `y0` to `y1`.
fn dense(y0: &[Complex64], y1: &[Complex64], k: &[Vec<Complex64>], h: f64, theta: f64) -> Vec<Complex64> {
    let t1 = 1.0 - theta;
    (0..y0.len())
        .map(|i| {
            let diff = y1[i] - y0[i];
            let r3 = k[0][i] * h - diff;
            let r4 = diff - k[6][i] * h - r3;
            let r5: Complex64 = k.iter().zip(D).map(|(kj, d)| kj[i] * d).sum::<Complex64>() * h;
            y0[i] + (diff + (r3 + (r4 + r5 * t1) * theta) * t1) * theta
        })
        .collect()
}

/// Integrates `y' = rhs(t, y)` from `t0`, returning the solution at each of
/// `samples` (non-decreasing, all `>= t0`). The local error per step is kept
/// below `tol` in a mixed absolute/relative max norm.
pub fn integrate_ode<F>(rhs: F, y0: &[Complex64], t0: f64, samples: &[f64], tol: f64) -> Result<Trajectory>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]) -> Result<()>,
{
    integrate_ode_with(rhs, y0, t0, samples, &OdeOptions::with_tol(tol))
}

pub fn integrate_ode_with<F>(
    mut rhs: F,
    y0: &[Complex64],
    t0: f64,
    samples: &[f64],
    opts: &OdeOptions,
) -> Result<Trajectory>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]) -> Result<()>,
{
    let tol = opts.tol;
    if !(TOL_MIN..=TOL_MAX).contains(&tol) {
        return Err(Error::InvalidInput(format!(
            "tolerance {tol:e} outside [{TOL_MIN:e}, {TOL_MAX:e}]"
        )));
    }
    if samples.windows(2).any(|w| w[1] < w[0]) || samples.first().is_some_and(|&s| s < t0) {
        return Err(Error::InvalidInput(
            "sample times must be non-decreasing and not before t0".into(),
        ));
    }
    if !finite(y0) {
        return Err(Error::NonFinite { t: t0 });
    }
    let dim = y0.len();
    let mut out = Trajectory {
        times: Vec::with_capacity(samples.len()),
        states: Vec::with_capacity(samples.len()),
    };
    let mut next = 0;
    while next < samples.len() && samples[next] == t0 {
        out.times.push(t0);
        out.states.push(y0.to_vec());
        next += 1;
    }
    let Some(&t_end) = samples.last() else {
        return Ok(out);
    };
    if next == samples.len() {
        return Ok(out);
    }

    let zero = Complex64::new(0.0, 0.0);
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k: Vec<Vec<Complex64>> = vec![vec![zero; dim]; 7];
    rhs(t, &y, &mut k[0])?;
    if !finite(&k[0]) {
        return Err(Error::NonFinite { t });
    }

    // starting step from the scale of y and y'
    let sc = |v: &[Complex64]| -> f64 {
        v.iter()
            .zip(&y)
            .map(|(a, b)| a.norm() / (tol * (1.0 + b.norm())))
            .fold(0.0, f64::max)
    };
    let d0 = y
        .iter()
        .map(|b| b.norm() / (tol * (1.0 + b.norm())))
        .fold(0.0, f64::max);
    let d1 = sc(&k[0]);
    let mut h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h = h.min(t_end - t0).min(opts.h_max).max(opts.h_min);

    let mut ytmp = vec![zero; dim];
    let mut ynew = vec![zero; dim];
    let mut steps = 0usize;
    while t < t_end {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::StepBudget {
                t,
                max_steps: opts.max_steps,
            });
        }
        let remaining = t_end - t;
        let last = h >= remaining;
        if last {
            h = remaining;
        }
        let mut stage_ok = true;
        for s in 1..7 {
            for i in 0..dim {
                let mut acc = zero;
                for (j, kj) in k.iter().enumerate().take(s) {
                    if A[s][j] != 0.0 {
                        acc += kj[i] * A[s][j];
                    }
                }
                ytmp[i] = y[i] + acc * h;
            }
            rhs(t + C[s] * h, &ytmp, &mut k[s])?;
            if !finite(&k[s]) {
                stage_ok = false;
                break;
            }
        }
        let err = if stage_ok {
            // stage 7 was evaluated at the 5th-order solution (FSAL)
            ynew.copy_from_slice(&ytmp);
            let mut e = 0.0f64;
            for i in 0..dim {
                let mut acc = zero;
                for (j, kj) in k.iter().enumerate() {
                    if E[j] != 0.0 {
                        acc += kj[i] * E[j];
                    }
                }
                let scale = tol * (1.0 + y[i].norm().max(ynew[i].norm()));
                e = e.max((acc * h).norm() / scale);
            }
            e
        } else {
            f64::INFINITY
        };

        if err <= 1.0 {
            let t_new = if last { t_end } else { t + h };
            while next < samples.len() && samples[next] <= t_new {
                let theta = ((samples[next] - t) / h).clamp(0.0, 1.0);
                let state = if samples[next] == t_new {
                    ynew.clone()
                } else {
                    dense(&y, &ynew, &k, h, theta)
                };
                out.times.push(samples[next]);
                out.states.push(state);
                next += 1;
            }
            t = t_new;
            std::mem::swap(&mut y, &mut ynew);
            let f_last = k[6].clone();
            k[0] = f_last;
            let fac = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h = (h * fac).min(opts.h_max);
        } else {
            let fac = if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.1, 0.9)
            } else {
                0.2
            };
            h *= fac;
            if h < opts.h_min {
                return Err(Error::MovableSingularity { t, h_min: opts.h_min });
            }
        }
    }
    Ok(out)
}
