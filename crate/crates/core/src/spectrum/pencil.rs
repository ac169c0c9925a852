//! The quadratic pencil of the coefficient flow linearised about an
//! isochronous equilibrium.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::equilibria::{EquilibriumConfig, Family};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, ComplexMatrix};
use crate::polynomials::{
    find_roots, integer_roots, pencil_charpoly_exact, rat_int, rational_to_f64, Convention, IntegerPolynomial,
    MonicPolynomial, Rational, RationalMatrix,
};

/// `p^2 + A p + B`, acting on the perturbation amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticPencil {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
}

impl QuadraticPencil {
    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// Exact `det(p^2 + A p + B)`, monic of degree `2N`.
    pub fn charpoly(&self) -> Result<IntegerPolynomial> {
        pencil_charpoly_exact(&self.a, &self.b)
    }

    /// `(p^2 + A p + B) r`.
    pub fn apply(&self, p: Complex64, r: &[Complex64]) -> Vec<Complex64> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n).fold(p * p * r[i], |acc, j| {
                    acc + (p * rational_to_f64(&self.a[(i, j)]) + rational_to_f64(&self.b[(i, j)])) * r[j]
                })
            })
            .collect()
    }
}

fn delta(i: i64, j: i64) -> Rational {
    if i == j {
        rat_int(1)
    } else {
        rat_int(0)
    }
}

/// Pencil of the tilde coefficients `cbar_1..cbar_N` (with `cbar_{N+1} = 0`).
pub fn build_pencil_from_cbar(cbar: &[Rational]) -> Result<QuadraticPencil> {
    let n = cbar.len();
    if n == 0 {
        return Err(Error::InvalidInput("pencil needs N >= 1 coefficients".into()));
    }
    let c = |j: i64| -> Rational {
        if j < 1 || j as usize > n {
            rat_int(0)
        } else {
            cbar[j as usize - 1].clone()
        }
    };
    let c1 = c(1);
    let c2 = c(2);
    let a = RationalMatrix::from_fn(n, |i, j| {
        let (nn, m) = (i as i64 + 1, j as i64 + 1);
        rat_int(2 * (nn - 1)) * delta(nn + 1, m) - (rat_int(2 * nn + 1) + rat_int(2) * &c1) * delta(nn, m)
            + rat_int(2) * c(nn) * delta(1, m)
    });
    let b = RationalMatrix::from_fn(n, |i, j| {
        let (nn, m) = (i as i64 + 1, j as i64 + 1);
        rat_int((nn + 2) * (nn - 3)) * delta(nn + 2, m)
            - rat_int(2 * (nn - 1)) * (rat_int(nn + 1) + &c1) * delta(nn + 1, m)
            + (rat_int(nn * (nn + 1)) + rat_int(2 * (nn - 1)) * &c1 - rat_int(2) * &c1 * &c1 + rat_int(6) * &c2)
                * delta(nn, m)
            + rat_int(2) * (-(rat_int(nn - 1) * c(nn + 1)) + (rat_int(nn - 1) - rat_int(2) * &c1) * c(nn)) * delta(1, m)
            + rat_int(6) * c(nn) * delta(2, m)
    });
    Ok(QuadraticPencil { a, b })
}

/// Pencil of an isochronous equilibrium.
pub fn build_pencil(config: &EquilibriumConfig) -> Result<QuadraticPencil> {
    if config.family != Family::Iso {
        return Err(Error::Unsupported(format!(
            "the pencil linearises the isochronous system, not {}",
            config.family.name()
        )));
    }
    if config.cbar.len() != config.n {
        return Err(Error::DimensionMismatch {
            expected: config.n,
            found: config.cbar.len(),
        });
    }
    build_pencil_from_cbar(&config.cbar)
}

/// The `2N` eigenvalues from the first-order companion `[[0, I], [-B, -A]]`.
pub fn solve_pencil_numeric(pencil: &QuadraticPencil) -> Result<Vec<Complex64>> {
    let n = pencil.n();
    let f = |r: &Rational| Complex64::new(rational_to_f64(r), 0.0);
    let m = ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => Complex64::zero(),
        (true, false) => {
            if j - n == i {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::zero()
            }
        }
        (false, true) => -f(&pencil.b[(i - n, j)]),
        (false, false) => -f(&pencil.a[(i - n, j - n)]),
    });
    eigenvalues(&m)
}

/// Second time derivative of the perturbation `gamma` of the tilde
/// coefficients, from the linearised equations of motion.
pub fn eqgamma_rhs(cbar: &[Rational], gamma: &[Complex64], gamma_dot: &[Complex64]) -> Vec<Complex64> {
    let n = cbar.len();
    let c = |j: i64| -> f64 {
        if j < 1 || j as usize > n {
            0.0
        } else {
            rational_to_f64(&cbar[j as usize - 1])
        }
    };
    let g = |v: &[Complex64], j: i64| -> Complex64 {
        if j < 1 || j as usize > n {
            Complex64::zero()
        } else {
            v[j as usize - 1]
        }
    };
    let i = Complex64::new(0.0, 1.0);
    let (c1, c2) = (c(1), c(2));
    (1..=n as i64)
        .map(|m| {
            let mf = m as f64;
            let velocity = g(gamma_dot, m + 1) * (2.0 * (mf - 1.0)) - g(gamma_dot, m) * (2.0 * mf + 1.0 + 2.0 * c1)
                + g(gamma_dot, 1) * (2.0 * c(m));
            let position = g(gamma, m + 2) * ((m + 2) * (m - 3)) as f64
                - g(gamma, m + 1) * (2.0 * (mf - 1.0) * (mf + 1.0 + c1))
                - g(gamma, 1) * (2.0 * (mf - 1.0) * c(m + 1))
                + g(gamma, m) * (mf * (mf + 1.0) + 2.0 * (mf - 1.0) * c1 - 2.0 * c1 * c1 + 6.0 * c2)
                + g(gamma, 1) * ((2.0 * (mf - 1.0) - 4.0 * c1) * c(m))
                + g(gamma, 2) * (6.0 * c(m));
            -i * velocity + position
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub nu: u32,
    pub mu: u32,
    pub n: usize,
    pub free: Option<Rational>,
    pub charpoly: IntegerPolynomial,
    /// Integer roots with multiplicity, ascending.
    pub integer_roots: Vec<BigInt>,
    /// Cofactor left after removing the integer roots.
    pub remainder: IntegerPolynomial,
    pub remainder_roots: Vec<Complex64>,
    pub all_integers: bool,
}

/// Exact characteristic polynomial split into integer roots and the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSpectrum {
    pub charpoly: IntegerPolynomial,
    pub integer_roots: Vec<BigInt>,
    pub remainder: IntegerPolynomial,
    /// Numeric roots of `remainder`.
    pub remainder_roots: Vec<Complex64>,
}

impl ExactSpectrum {
    /// All `2N` eigenvalues, the integer ones exact.
    pub fn all_roots(&self) -> Vec<Complex64> {
        self.integer_roots
            .iter()
            .map(|r| Complex64::new(rational_to_f64(&Rational::from_integer(r.clone())), 0.0))
            .chain(self.remainder_roots.iter().copied())
            .collect()
    }
}

pub fn exact_spectrum(pencil: &QuadraticPencil) -> Result<ExactSpectrum> {
    let charpoly = pencil.charpoly()?;
    let (ints, remainder) = integer_roots(&charpoly);
    let rest = match remainder.degree() {
        Some(d) if d > 0 => {
            let lead = remainder.leading();
            let tail: Vec<Complex64> = (1..=d)
                .map(|m| Complex64::new(rational_to_f64(&(&remainder.coeffs()[d - m] / &lead)), 0.0))
                .collect();
            find_roots(&MonicPolynomial::new(&tail, Convention::Plain), 1e-15)?
        }
        _ => Vec::new(),
    };
    Ok(ExactSpectrum {
        charpoly,
        integer_roots: ints,
        remainder,
        remainder_roots: rest,
    })
}

pub fn spectral_report(config: &EquilibriumConfig) -> Result<SpectralReport> {
    let pencil = build_pencil(config)?;
    let ExactSpectrum {
        charpoly,
        integer_roots,
        remainder,
        remainder_roots,
    } = exact_spectrum(&pencil)?;
    let all_integers = remainder.is_one();
    Ok(SpectralReport {
        nu: config.nu,
        mu: config.mu,
        n: config.n,
        free: config.free.clone(),
        charpoly,
        integer_roots,
        remainder,
        remainder_roots,
        all_integers,
    })
}

/// Exact spectrum of the `(nu, mu, N)` cell; the `nu = 5` cell is repeated
/// for every free constant in `free_samples`.
pub fn verify_integrality(nu: u32, mu: u32, n: usize, free_samples: &[Rational]) -> Result<Vec<SpectralReport>> {
    let zero = [rat_int(0)];
    let frees: &[Rational] = if nu == 5 { free_samples } else { &zero };
    frees
        .iter()
        .map(|f| spectral_report(&EquilibriumConfig::iso(nu, mu, n, f)?))
        .collect()
}
