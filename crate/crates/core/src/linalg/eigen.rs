//! Eigenvalues of dense complex matrices: Householder reduction to
//! Hessenberg form followed by shifted QR with Givens rotations.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, Lu};
use crate::error::{Error, Result};

const MAX_ITER_PER_EIGENVALUE: usize = 100;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Unitary similarity to upper Hessenberg form.
pub fn hessenberg(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let alpha_norm = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // v = x + phase*|x| e_1, H = I - 2 v v^H / (v^H v)
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] += phase * alpha_norm;
        let vnorm2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // left: rows k+1.., all columns
        for j in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(a, va)| va.conj() * h[(k + 1 + a, j)]).sum();
            let f = s * (2.0 / vnorm2);
            for (a, va) in v.iter().enumerate() {
                h[(k + 1 + a, j)] -= va * f;
            }
        }
        // right: all rows, columns k+1..
        for i in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(a, va)| h[(i, k + 1 + a)] * va).sum();
            let f = s * (2.0 / vnorm2);
            for (a, va) in v.iter().enumerate() {
                h[(i, k + 1 + a)] -= f * va.conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = czero();
        }
    }
    Ok(h)
}

/// Rotation `[c s; -conj(s) c]` mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, czero());
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let norm = na.hypot(nb);
    (na / norm, (a / na) * b.conj() / norm)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a square complex matrix, in no particular order.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = m.rows();
    let mut h = hessenberg(m)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let mut eig = vec![czero(); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let mut s = abs1(h[(lo, lo)]) + abs1(h[(lo - 1, lo - 1)]);
            if s == 0.0 {
                s = scale;
            }
            if abs1(h[(lo, lo - 1)]) <= f64::EPSILON * s {
                h[(lo, lo - 1)] = czero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > MAX_ITER_PER_EIGENVALUE {
            return Err(Error::EigenNoConvergence { iterations: iter });
        }
        let shift = if iter % 11 == 10 {
            let extra = if hi >= 2 { h[(hi - 1, hi - 2)].re.abs() } else { 0.0 };
            h[(hi, hi)] + Complex64::new(0.75 * (h[(hi, hi - 1)].re.abs() + extra), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        rot.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rot.push((c, s));
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = czero();
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = lo + idx;
            for i in lo..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    if eig.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::EigenNoConvergence { iterations: iter });
    }
    Ok(eig)
}

/// Right eigenvector for an (approximate) eigenvalue by inverse iteration.
pub fn eigenvector(m: &ComplexMatrix, lambda: Complex64) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let delta = 1e-13 * (1.0 + lambda.norm() + m.max_abs());
    let shifted = ComplexMatrix::from_fn(n, n, |i, j| if i == j { m[(i, j)] - lambda - delta } else { m[(i, j)] });
    let lu = Lu::new(&shifted)?;
    let mut x: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(1.0 + 0.1 * k as f64, 0.37 * k as f64))
        .collect();
    for _ in 0..3 {
        x = lu.solve(&x);
        let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::EigenNoConvergence { iterations: 0 });
        }
        for v in &mut x {
            *v /= norm;
        }
    }
    Ok(x)
}

/// First-order variation of the eigenvalue `lambda` of `u` along `udot`:
/// `y^T udot x / (y^T x)` with right and left eigenvectors `x`, `y`.
pub fn eigenvalue_velocity(u: &ComplexMatrix, udot: &ComplexMatrix, lambda: Complex64) -> Result<Complex64> {
    let x = eigenvector(u, lambda)?;
    let y = eigenvector(&u.transpose(), lambda)?;
    let ux = udot * x.as_slice();
    let num: Complex64 = y.iter().zip(&ux).map(|(a, b)| a * b).sum();
    let den: Complex64 = y.iter().zip(&x).map(|(a, b)| a * b).sum();
    Ok(num / den)
}
