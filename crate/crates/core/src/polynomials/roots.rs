//! Simultaneous root finding by the Aberth–Ehrlich iteration.

use num_complex::Complex64;

use super::monic::MonicPolynomial;
use crate::error::{Error, Result};

const MAX_ITER: usize = 1000;

fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for coef in c {
        dp = dp * z + p;
        p = p * z + coef;
    }
    (p, dp)
}

/// All `N` roots of `poly`, with multiplicity. Iteration stops once every
/// correction is below `tol * (1 + |z|)`; genuinely repeated roots converge
/// linearly and come back as a tight cluster.
pub fn find_roots(poly: &MonicPolynomial, tol: f64) -> Result<Vec<Complex64>> {
    let c = poly.plain_coeffs();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    if c.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidInput("non-finite coefficient".into()));
    }
    let radius = 1.0 + c[1..].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let phase = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4 + 0.1 * (k as f64).sin();
            Complex64::from_polar(radius, phase)
        })
        .collect();
    let mut done = vec![false; n];
    let coef_scale: f64 = c.iter().map(|v| v.norm()).sum();
    for _ in 0..MAX_ITER {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner_with_derivative(&c, z[k]);
            if p.norm() == 0.0 {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 || !dp.norm().is_finite() || dp.norm() == 0.0 {
                Complex64::new(tol * (1.0 + z[k].norm()), 0.0)
            } else {
                ratio / denom
            };
            z[k] -= step;
            let converged = step.norm() <= tol * (1.0 + z[k].norm());
            // a root whose residual sits at rounding level is also done
            let resid_floor = 4.0 * f64::EPSILON * coef_scale * (1.0 + z[k].norm()).powi(n as i32);
            if converged || p.norm() <= resid_floor {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            if z.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
                return Ok(z);
            }
            break;
        }
    }
    Err(Error::RootsNoConvergence { degree: n })
}

/// Roots grouped with multiplicity. Nearby iterates (within `1e-4` relative)
/// form a candidate cluster whose centroid is polished by Newton steps on the
/// `(k - 1)`-th derivative; it is accepted only when the centroid makes
/// the first `k - 1` derivatives vanish to `tol`; otherwise they stay simple.
pub fn cluster_roots(poly: &MonicPolynomial, roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    let coef_scale: f64 = poly.plain_coeffs().iter().map(|v| v.norm()).sum();
    for i in 0..n {
        if used[i] {
            continue;
        }
        let group: Vec<usize> = (i..n)
            .filter(|&j| !used[j] && (roots[j] - roots[i]).norm() <= 1e-4 * (1.0 + roots[i].norm()))
            .collect();
        let k = group.len();
        let mut centroid = group.iter().map(|&j| roots[j]).sum::<Complex64>() / k as f64;
        // a k-fold root is a simple root of the (k-1)-th derivative
        if k > 1 {
            for _ in 0..8 {
                let d = poly.eval_derivative(centroid, k);
                if d.norm() == 0.0 {
                    break;
                }
                let step = poly.eval_derivative(centroid, k - 1) / d;
                if !(step.re.is_finite() && step.im.is_finite()) || step.norm() > 1e-3 * (1.0 + centroid.norm()) {
                    break;
                }
                centroid -= step;
            }
        }
        let scale = coef_scale * (1.0 + centroid.norm()).powi(poly.degree() as i32);
        let genuine = (0..k).all(|d| poly.eval_derivative(centroid, d).norm() <= tol * scale);
        if k > 1 && genuine {
            for &j in &group {
                used[j] = true;
            }
            out.push((centroid, k));
        } else {
            used[i] = true;
            out.push((roots[i], 1));
        }
    }
    out
}
