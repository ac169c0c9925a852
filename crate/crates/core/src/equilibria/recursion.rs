//! Two-term recurrences for the coefficients of the reduced equilibrium
//! polynomials.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomials::{rat, rat_int, Rational};

/// Coefficients `phi_0..phi_nu` (or `chi_0..chi_nu`) solving a recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionSolution {
    pub nu: u32,
    pub coeffs: Vec<Rational>,
    /// Index of the coefficient left free by a vanishing left-hand factor.
    pub free_index: Option<usize>,
}

fn iso_factors(nu: u32, phi1: &Rational, m: i64) -> (Rational, Rational) {
    let nu = nu as i64;
    let left = rat_int(m * (m - 5));
    let right = rat_int(m - nu - 1) * (rat_int(m + nu) + phi1 * rat_int(2));
    (left, right)
}

fn chi_factors(nu: u32, chi1: &Rational, m: i64) -> (Rational, Rational) {
    let nu = nu as i64;
    let left = rat_int(m * (m - 5));
    let right = rat_int(2 * (nu + 1 - m)) * (rat_int(3 - nu - m) - chi1);
    (left, right)
}

fn run(
    nu: u32,
    first: Rational,
    free: &Rational,
    factors: impl Fn(i64) -> (Rational, Rational),
) -> Result<RecursionSolution> {
    let mut coeffs = vec![Rational::one(), first];
    let mut free_index = None;
    for m in 2..=nu as i64 + 1 {
        let (left, right) = factors(m);
        let rhs = right * &coeffs[m as usize - 1];
        let next = if left.is_zero() {
            if !rhs.is_zero() {
                return Err(Error::RecursionContradiction { nu, m: m as u32 });
            }
            if m as u32 == nu + 1 {
                Rational::zero()
            } else {
                free_index = Some(m as usize);
                free.clone()
            }
        } else {
            rhs / left
        };
        coeffs.push(next);
    }
    if !coeffs.pop().is_some_and(|last| last.is_zero()) {
        return Err(Error::RecursionContradiction { nu, m: nu + 1 });
    }
    coeffs.truncate(nu as usize + 1);
    Ok(RecursionSolution { nu, coeffs, free_index })
}

/// `phi_1 = nu (nu + 1) / (2 (2 - nu))`.
pub fn iso_phi1(nu: u32) -> Result<Rational> {
    if nu == 2 {
        return Err(Error::NuTwoExcluded);
    }
    let nu = nu as i64;
    Ok(rat(nu * (nu + 1), 2 * (2 - nu)))
}

/// Solves `m (m - 5) phi_m = (m - nu - 1)(m + nu + 2 phi_1) phi_{m-1}` with
/// `phi_0 = 1`, `phi_{nu+1} = 0`. `free` is used for a coefficient whose
/// left-hand factor vanishes (`phi_5` for `nu = 5`).
pub fn solve_iso_recursion(nu: u32, free: &Rational) -> Result<RecursionSolution> {
    let phi1 = iso_phi1(nu)?;
    if nu == 0 {
        return Ok(RecursionSolution {
            nu,
            coeffs: vec![Rational::one()],
            free_index: None,
        });
    }
    let f = phi1.clone();
    run(nu, phi1, free, |m| iso_factors(nu, &f, m))
}

/// Solves `m (m - 5) chi_m = 2 (nu + 1 - m)(3 - nu - chi_1 - m) chi_{m-1}`.
/// `chi_1 = -nu` unless `nu = 2`, where `chi_1` is taken from `chi1`;
/// `chi5` fills the free fifth coefficient.
pub fn solve_chi_recursion(nu: u32, chi1: &Rational, chi5: &Rational) -> Result<RecursionSolution> {
    if nu == 0 {
        return Ok(RecursionSolution {
            nu,
            coeffs: vec![Rational::one()],
            free_index: None,
        });
    }
    let first = if nu == 2 { chi1.clone() } else { rat_int(-(nu as i64)) };
    let f = first.clone();
    let mut sol = run(nu, first, chi5, |m| chi_factors(nu, &f, m))?;
    if nu == 2 {
        sol.free_index = Some(1);
    }
    Ok(sol)
}

fn residuals(sol: &RecursionSolution, factors: impl Fn(i64) -> (Rational, Rational)) -> Vec<Rational> {
    let at = |j: i64| -> Rational {
        if j < 0 || j as usize >= sol.coeffs.len() {
            Rational::zero()
        } else {
            sol.coeffs[j as usize].clone()
        }
    };
    (0..=sol.nu as i64 + 1)
        .map(|m| {
            let (left, right) = factors(m);
            left * at(m) - right * at(m - 1)
        })
        .collect()
}

/// `lhs - rhs` of the phi recurrence for `m = 0..=nu+1`, including the
/// `m = 1` equation that fixes `phi_1`.
pub fn iso_recursion_residual(sol: &RecursionSolution) -> Vec<Rational> {
    let phi1 = sol.coeffs.get(1).cloned().unwrap_or_else(Rational::zero);
    residuals(sol, |m| iso_factors(sol.nu, &phi1, m))
}

pub fn chi_recursion_residual(sol: &RecursionSolution) -> Vec<Rational> {
    let chi1 = sol.coeffs.get(1).cloned().unwrap_or_else(Rational::zero);
    residuals(sol, |m| chi_factors(sol.nu, &chi1, m))
}
