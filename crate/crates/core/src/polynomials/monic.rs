use num_complex::Complex64;

use crate::error::{Error, Result};

/// How the coefficients `k_m` of a monic polynomial are read:
/// `Plain` means `sum k_m z^(N-m)`, `Tilde` means `sum i^m k_m z^(N-m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    Plain,
    Tilde,
}

/// `i^m` computed exactly.
pub fn i_pow(m: i64) -> Complex64 {
    match m.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl Convention {
    /// Factor turning a stored coefficient into the plain one.
    pub fn to_plain_factor(self, m: usize) -> Complex64 {
        match self {
            Convention::Plain => Complex64::new(1.0, 0.0),
            Convention::Tilde => i_pow(m as i64),
        }
    }

    fn from_plain_factor(self, m: usize) -> Complex64 {
        match self {
            Convention::Plain => Complex64::new(1.0, 0.0),
            Convention::Tilde => i_pow(-(m as i64)),
        }
    }
}

/// Monic polynomial of degree `N`; `coeffs[0] = 1` and the remaining entries
/// are read according to `convention`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex64>,
    convention: Convention,
}

impl MonicPolynomial {
    /// Builds from `k_1..k_N` (the leading 1 is implied).
    pub fn new(tail: &[Complex64], convention: Convention) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(Complex64::new(1.0, 0.0));
        coeffs.extend_from_slice(tail);
        Self { coeffs, convention }
    }

    /// Vieta expansion of `prod (z - z_n)`.
    pub fn from_roots(roots: &[Complex64], convention: Convention) -> Self {
        let plain = expand_roots(roots);
        let coeffs = plain
            .iter()
            .enumerate()
            .map(|(m, c)| c * convention.from_plain_factor(m))
            .collect();
        Self { coeffs, convention }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Coefficients `k_0 = 1, k_1, ..., k_N` in the stored convention.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `k_1..k_N`.
    pub fn tail(&self) -> &[Complex64] {
        &self.coeffs[1..]
    }

    pub fn plain_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c * self.convention.to_plain_factor(m))
            .collect()
    }

    pub fn to_convention(&self, convention: Convention) -> Self {
        let coeffs = self
            .plain_coeffs()
            .iter()
            .enumerate()
            .map(|(m, c)| c * convention.from_plain_factor(m))
            .collect();
        Self { coeffs, convention }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.plain_coeffs()
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `k`-th derivative at `z`.
    pub fn eval_derivative(&self, z: Complex64, k: usize) -> Complex64 {
        let plain = self.plain_coeffs();
        let n = plain.len() - 1;
        plain
            .iter()
            .enumerate()
            .take((n + 1).saturating_sub(k))
            .fold(Complex64::new(0.0, 0.0), |acc, (m, c)| {
                let falling: f64 = (0..k).map(|j| (n - m - j) as f64).product();
                acc * z + c * falling
            })
    }
}

/// Plain coefficients `1, c_1, ..., c_N` of `prod (z - r)`.
pub fn expand_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        c.push(Complex64::new(0.0, 0.0));
        for m in (1..c.len()).rev() {
            let prev = c[m - 1];
            c[m] -= r * prev;
        }
    }
    c
}

/// Time derivatives of the coefficients (`k_1..k_N`) of `prod (z - z_n(t))`
/// given the zero velocities: the expansion of
/// `-sum_n zdot_n prod_{m != n} (z - z_m)`.
pub fn coeff_velocities(
    zeros: &[Complex64],
    zero_velocities: &[Complex64],
    convention: Convention,
) -> Result<Vec<Complex64>> {
    let n = zeros.len();
    if zero_velocities.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: zero_velocities.len(),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            if zeros[i] == zeros[j] {
                return Err(Error::Collision { i, j, separation: 0.0 });
            }
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let others: Vec<Complex64> = (0..n).filter(|&j| j != k).map(|j| zeros[j]).collect();
        let partial = expand_roots(&others);
        // partial has degree N-1; its coefficient of z^(N-m) is partial[m-1]
        for m in 1..=n {
            out[m - 1] -= zero_velocities[k] * partial[m - 1];
        }
    }
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(idx, v)| v * convention.from_plain_factor(idx + 1))
        .collect())
}

/// Inverse of [`coeff_velocities`]: `zdot_n = -psi_t(z_n) / psi_z(z_n)`.
pub fn zero_velocities(
    zeros: &[Complex64],
    coeff_dots: &[Complex64],
    convention: Convention,
) -> Result<Vec<Complex64>> {
    let n = zeros.len();
    if coeff_dots.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: coeff_dots.len(),
        });
    }
    let mut out = Vec::with_capacity(n);
    for (k, &z) in zeros.iter().enumerate() {
        let psi_t: Complex64 = coeff_dots
            .iter()
            .enumerate()
            .map(|(idx, cd)| cd * convention.to_plain_factor(idx + 1) * z.powu((n - idx - 1) as u32))
            .sum();
        let psi_z: Complex64 = (0..n).filter(|&j| j != k).map(|j| z - zeros[j]).product();
        if psi_z.norm() == 0.0 {
            let j = (0..n).find(|&j| j != k && zeros[j] == z).unwrap_or(k);
            return Err(Error::Collision {
                i: k,
                j,
                separation: 0.0,
            });
        }
        out.push(-psi_t / psi_z);
    }
    Ok(out)
}
