//! Exact and numeric tests of the conjectured pencil spectra.

use num_complex::Complex64;

use super::pencil::{build_pencil_from_cbar, solve_pencil_numeric};
use crate::equilibria::{cmbar_closed_form, iso_cbar};
use crate::error::{Error, Result};
use crate::linalg::min_cost_assignment;
use crate::polynomials::{rat_int, rational_to_f64, IntegerPolynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjecture {
    /// Product formula for the full characteristic polynomial, integer `mu`.
    C215,
    /// Part of the spectrum for arbitrary `mu`.
    C217,
}

/// A cell where the claimed polynomial differs from the exact one.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub nu: u32,
    pub mu: u32,
    pub n: usize,
    pub free: Option<Rational>,
    pub claimed: IntegerPolynomial,
    pub actual: IntegerPolynomial,
}

/// One claimed eigenvalue and the closest computed one.
#[derive(Clone, Debug, PartialEq)]
pub struct Containment {
    pub claimed: f64,
    pub nearest: Complex64,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureVerdict {
    pub which: Conjecture,
    pub holds: bool,
    /// Cells that failed the product formula.
    pub counterexamples: Vec<Counterexample>,
    /// Claimed eigenvalues matched one-to-one against the spectrum.
    pub matches: Vec<Containment>,
    /// Eigenvalues left over after the match, recorded without
    /// interpretation.
    pub unclaimed: Vec<Complex64>,
}

/// The claimed product as a list of integer roots.
pub fn c215_roots(nu: u32, mu: u32, n: usize) -> Result<Vec<i64>> {
    let (mu, n) = (mu as i64, n as i64);
    if mu < nu as i64 || mu > n {
        return Err(Error::InvalidInput(format!(
            "need nu <= mu <= N, got nu = {nu}, mu = {mu}, N = {n}"
        )));
    }
    let mut roots = Vec::with_capacity(2 * n as usize);
    let mut pairs = |range: std::ops::RangeInclusive<i64>, f: &dyn Fn(i64) -> [i64; 2]| {
        for k in range {
            roots.extend(f(k));
        }
    };
    match nu {
        0 => {
            pairs(1..=n - mu, &|k| [k, k + 1]);
            pairs(1..=mu, &|k| [-k, 5 - k]);
        }
        1 => {
            pairs(1..=n - mu, &|k| [k, k + 5]);
            pairs(1..=mu - 1, &|k| [-k, 7 - k]);
            roots.extend([-1, 4]);
        }
        3 => {
            pairs(1..=n - mu, &|k| [k, k - 5]);
            pairs(1..=mu - 1, &|k| [-k, k - mu + 7]);
            roots.extend([-1, 4]);
        }
        4 => {
            pairs(1..=n - mu, &|k| [k, k - 1]);
            roots.extend((1..=mu - 4).map(|k| -k));
            roots.extend((1..=mu).map(|k| -k - 1));
            roots.extend([-1, 2, 3, 4]);
        }
        5 => {
            pairs(1..=n - mu, &|k| [k, k + 1]);
            pairs(1..=mu, &|k| [-k, k - mu + 4]);
        }
        2 => return Err(Error::NuTwoExcluded),
        _ => return Err(Error::InvalidInput(format!("nu = {nu} has no conjectured spectrum"))),
    }
    roots.sort_unstable();
    Ok(roots)
}

pub fn c215_polynomial(nu: u32, mu: u32, n: usize) -> Result<IntegerPolynomial> {
    Ok(IntegerPolynomial::from_integer_roots(&c215_roots(nu, mu, n)?))
}

/// Smallest `N` for which the partial-spectrum claim is stated.
pub fn c217_min_n(nu: u32) -> usize {
    if matches!(nu, 1 | 3) {
        8
    } else {
        5
    }
}

/// The claimed eigenvalues for real `mu`.
pub fn c217_claimed(nu: u32, mu: f64, n: usize) -> Result<Vec<f64>> {
    if n < c217_min_n(nu) {
        return Err(Error::InvalidInput(format!(
            "the claim for nu = {nu} needs N >= {}",
            c217_min_n(nu)
        )));
    }
    let n = n as i64;
    let (head, range): ([f64; 3], std::ops::RangeInclusive<i64>) = match nu {
        0 | 5 => ([2.0, 3.0, 4.0], 5..=n),
        4 => ([2.0, 3.0, 4.0], 4..=n - 1),
        1 => ([-1.0, 4.0, 6.0], 8..=n),
        3 => ([-1.0, 4.0, 6.0], 3..=n - 5),
        2 => return Err(Error::NuTwoExcluded),
        _ => return Err(Error::InvalidInput(format!("nu = {nu} has no conjectured spectrum"))),
    };
    Ok(head.into_iter().chain(range.map(|k| k as f64 - mu)).collect())
}

fn match_claims(claimed: &[f64], spectrum: &[Complex64]) -> (Vec<Containment>, Vec<Complex64>) {
    let cost: Vec<Vec<f64>> = claimed
        .iter()
        .map(|&c| spectrum.iter().map(|z| (z - c).norm()).collect())
        .collect();
    // pad to a square problem with free dummy rows
    let mut square = cost.clone();
    square.resize(spectrum.len(), vec![0.0; spectrum.len()]);
    let assign = min_cost_assignment(&square);
    let matches = claimed
        .iter()
        .zip(&assign)
        .map(|(&c, &j)| Containment {
            claimed: c,
            nearest: spectrum[j],
            distance: (spectrum[j] - c).norm(),
        })
        .collect();
    let taken: Vec<usize> = assign[..claimed.len()].to_vec();
    let unclaimed = (0..spectrum.len())
        .filter(|j| !taken.contains(j))
        .map(|j| spectrum[j])
        .collect();
    (matches, unclaimed)
}

/// Tests one conjecture on the cell `(nu, mu, N)`. `mu` must be an integer
/// for [`Conjecture::C215`]. For `nu = 5` every entry of `free_samples` is
/// tried. `tol` applies to the numeric containment of [`Conjecture::C217`].
pub fn verify_conjectures(
    which: Conjecture,
    nu: u32,
    mu: &Rational,
    n: usize,
    free_samples: &[Rational],
    tol: f64,
) -> Result<ConjectureVerdict> {
    let zero = [rat_int(0)];
    let frees: &[Rational] = if nu == 5 { free_samples } else { &zero };
    let mut verdict = ConjectureVerdict {
        which,
        holds: true,
        counterexamples: Vec::new(),
        matches: Vec::new(),
        unclaimed: Vec::new(),
    };
    match which {
        Conjecture::C215 => {
            if !mu.is_integer() || mu < &rat_int(0) {
                return Err(Error::InvalidInput(
                    "the product formula needs a non-negative integer mu".into(),
                ));
            }
            let mu_int = mu
                .to_integer()
                .try_into()
                .map_err(|_| Error::InvalidInput("mu too large".into()))?;
            let claimed = c215_polynomial(nu, mu_int, n)?;
            for f in frees {
                let actual = build_pencil_from_cbar(&iso_cbar(nu, mu_int, n, f)?)?.charpoly()?;
                if actual != claimed {
                    verdict.holds = false;
                    verdict.counterexamples.push(Counterexample {
                        nu,
                        mu: mu_int,
                        n,
                        free: (nu == 5).then(|| f.clone()),
                        claimed: claimed.clone(),
                        actual,
                    });
                }
            }
        }
        Conjecture::C217 => {
            let claimed = c217_claimed(nu, rational_to_f64(mu), n)?;
            for f in frees {
                let cbar = cmbar_closed_form(nu, mu, n, f)?;
                let spectrum = solve_pencil_numeric(&build_pencil_from_cbar(&cbar)?)?;
                let (matches, unclaimed) = match_claims(&claimed, &spectrum);
                if matches.iter().any(|m| m.distance > tol) {
                    verdict.holds = false;
                }
                verdict.matches.extend(matches);
                verdict.unclaimed.extend(unclaimed);
            }
        }
    }
    Ok(verdict)
}
