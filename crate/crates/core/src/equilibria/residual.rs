//! Exact residuals of the time-independent coefficient equations and the
//! root-multiplicity classification of equilibria.

use num_complex::Complex64;

use super::families::{EquilibriumConfig, Family};
use crate::error::Result;
use crate::polynomials::{cluster_roots, find_roots, rat_int, rational_to_f64, Convention, MonicPolynomial, Rational};

/// The algebraic system an equilibrium is substituted into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualSystem {
    Iso,
    Altgold,
}

fn entry(c: &[Rational], j: i64) -> Rational {
    match j {
        0 => rat_int(1),
        j if j < 0 || j as usize > c.len() => rat_int(0),
        j => c[j as usize - 1].clone(),
    }
}

/// `m = 1..N` equations of the isochronous system with all time
/// derivatives set to zero.
pub fn iso_residual(cbar: &[Rational]) -> Vec<Rational> {
    let c = |j| entry(cbar, j);
    let c1 = c(1);
    let c2 = c(2);
    (1..=cbar.len() as i64)
        .map(|m| {
            -rat_int((m + 2) * (m - 3)) * c(m + 2)
                + rat_int(2 * (m - 1)) * (rat_int(m + 1) + &c1) * c(m + 1)
                + (rat_int(-m * (m + 1)) - rat_int(2 * (m - 1)) * &c1 + rat_int(2) * &c1 * &c1 - rat_int(6) * &c2)
                    * c(m)
        })
        .collect()
}

/// `m = 1..N` equations of the plain coefficient system at rest, with
/// parameter `a`.
pub fn altgold_residual(cbar: &[Rational], a: &Rational) -> Vec<Rational> {
    let n = cbar.len() as i64;
    let c = |j| entry(cbar, j);
    let c1 = c(1);
    let c2 = c(2);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    (1..=n)
        .map(|m| {
            rat_int((m + 2) * (m - 3)) * c(m + 2) - rat_int(2 * (m - 1)) * &c1 * c(m + 1)
                + rat_int(2) * (rat_int(m * (n + 2 - m)) * &a2 - &c1 * &c1 + rat_int(3) * &c2) * c(m)
                - rat_int(2 * (n + 1 - m)) * &a2 * &c1 * c(m - 1)
                + rat_int((n + 2 - m) * (n + 1 - m)) * &a4 * c(m - 2)
        })
        .collect()
}

/// Residual of `config` in `system`. A plain family without `a` is
/// evaluated at `a = 0`.
pub fn equilibrium_residual(config: &EquilibriumConfig, system: ResidualSystem) -> Vec<Rational> {
    match system {
        ResidualSystem::Iso => iso_residual(&config.cbar),
        ResidualSystem::Altgold => altgold_residual(&config.cbar, &config.a.clone().unwrap_or_else(|| rat_int(0))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genuineness {
    Genuine,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenuinenessReport {
    pub verdict: Genuineness,
    /// Distinct roots with their multiplicities.
    pub roots: Vec<(Complex64, usize)>,
    /// `mu >= N - 1 && nu >= mu - 1` for the isochronous family, `None`
    /// for the others.
    pub necessary_condition: Option<bool>,
}

pub const CLUSTER_TOL: f64 = 1e-8;

/// Classifies an equilibrium by the multiplicities of the zeros of its
/// polynomial.
pub fn genuineness_check(config: &EquilibriumConfig) -> Result<GenuinenessReport> {
    let tail: Vec<Complex64> = config
        .cbar
        .iter()
        .map(|r| Complex64::new(rational_to_f64(r), 0.0))
        .collect();
    let convention = if config.family == Family::Iso {
        Convention::Tilde
    } else {
        Convention::Plain
    };
    let mut report = genuineness_of_polynomial(&MonicPolynomial::new(&tail, convention))?;
    if config.family == Family::Iso {
        let (n, mu, nu) = (config.n as i64, config.mu as i64, config.nu as i64);
        report.necessary_condition = Some(mu >= n - 1 && nu >= mu - 1);
    }
    Ok(report)
}

pub fn genuineness_of_roots(roots: &[Complex64]) -> Result<GenuinenessReport> {
    genuineness_of_polynomial(&MonicPolynomial::from_roots(roots, Convention::Plain))
}

fn genuineness_of_polynomial(poly: &MonicPolynomial) -> Result<GenuinenessReport> {
    let roots = find_roots(poly, 1e-14)?;
    let clusters = cluster_roots(poly, &roots, CLUSTER_TOL);
    let verdict = if clusters.iter().any(|&(_, k)| k >= 2) {
        Genuineness::Degenerate
    } else {
        Genuineness::Genuine
    };
    Ok(GenuinenessReport {
        verdict,
        roots: clusters,
        necessary_condition: None,
    })
}
