//! Closed-form equilibrium families of the isochronous and the plain
//! coefficient systems.

use num_traits::{One, Zero};

use super::recursion::solve_iso_recursion;
use crate::error::{Error, Result};
use crate::polynomials::{rat, rat_int, IntegerPolynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Equilibria of the isochronous coefficient system.
    Iso,
    /// `(z - a)^mu (z + a)^(N - mu)`.
    AltgoldBinomial,
    /// A free quadratic factor times powers of `z - a` and `z + a`.
    AltgoldNu2,
    /// Degree-`nu` core with a free constant, `nu >= 5`.
    AltgoldNu5Plus,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Iso => "iso",
            Family::AltgoldBinomial => "altgold_binomial",
            Family::AltgoldNu2 => "altgold_nu2",
            Family::AltgoldNu5Plus => "altgold_nu5plus",
        }
    }

    pub fn is_iso(self) -> bool {
        self == Family::Iso
    }
}

/// One member of an equilibrium family. `cbar` holds `c_1..c_N` in the
/// convention of the family's system: tilde for [`Family::Iso`], plain
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumConfig {
    pub family: Family,
    pub n: usize,
    pub nu: u32,
    pub mu: u32,
    /// The family's free constant, when it has one.
    pub free: Option<Rational>,
    /// `a` for the plain families.
    pub a: Option<Rational>,
    pub cbar: Vec<Rational>,
}

/// `binom(x, k)` for rational `x` as a falling factorial.
pub fn binom(x: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * (x - rat_int(j)) / rat_int(j + 1);
    }
    acc
}

fn sign(m: i64) -> Rational {
    if m % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pow(base: &IntegerPolynomial, k: usize) -> IntegerPolynomial {
    (0..k).fold(IntegerPolynomial::one(), |acc, _| &acc * base)
}

/// `c_1..c_N` of a monic degree-`N` polynomial given in ascending powers.
fn tail_coefficients(p: &IntegerPolynomial, n: usize) -> Result<Vec<Rational>> {
    if p.degree() != Some(n) || !p.leading().is_one() {
        return Err(Error::InvalidInput(
            "equilibrium polynomial is not monic of degree N".into(),
        ));
    }
    let c = p.coeffs();
    Ok((1..=n).map(|m| c[n - m].clone()).collect())
}

/// The tilde coefficients of `phi(z) (z - i)^(mu - nu) z^(N - mu)`, with the
/// core `phi` from the recurrence. `free` is the constant `c` of the
/// `nu = 5` case, `phi_5 = -(1 + c)`.
pub fn iso_cbar(nu: u32, mu: u32, n: usize, free: &Rational) -> Result<Vec<Rational>> {
    check_iso_cell(nu, mu, n)?;
    let phi5 = -(Rational::one() + free);
    let phi = solve_iso_recursion(nu, &phi5)?;
    let step = [Rational::one(), -Rational::one()];
    let mut seq = phi.coeffs;
    for _ in nu..mu {
        seq = convolve(&seq, &step);
    }
    seq.resize(n + 1, Rational::zero());
    Ok(seq.split_off(1))
}

fn check_iso_cell(nu: u32, mu: u32, n: usize) -> Result<()> {
    if nu == 2 {
        return Err(Error::NuTwoExcluded);
    }
    if ![0, 1, 3, 4, 5].contains(&nu) {
        return Err(Error::InvalidInput(format!(
            "nu = {nu} has no isochronous equilibrium family"
        )));
    }
    if mu < nu || mu as usize > n {
        return Err(Error::InvalidInput(format!(
            "need nu <= mu <= N, got nu = {nu}, mu = {mu}, N = {n}"
        )));
    }
    Ok(())
}

/// The printed binomial formulas for `cbar_1..cbar_N`, valid for rational
/// `mu` as well.
pub fn cmbar_closed_form(nu: u32, mu: &Rational, n: usize, c: &Rational) -> Result<Vec<Rational>> {
    let b = |shift: i64, m: i64| binom(&(mu - rat_int(shift)), m);
    let five = |k: i64| binom(&rat_int(5), k);
    let one = |m: i64| -> Result<Rational> {
        let body = match nu {
            0 => b(0, m),
            1 => {
                if mu.is_one() {
                    return Ok(if m == 1 { Rational::one() } else { Rational::zero() });
                }
                b(2, m) - b(2, m - 2)
            }
            3 => b(3, m) + rat_int(6) * b(3, m - 1) + rat_int(14) * b(3, m - 2) + rat_int(14) * b(3, m - 3),
            4 => (0..=4).map(|k| b(4, m - k) * five(k)).sum(),
            5 => c * b(5, m - 5) + (0..=5).map(|k| b(5, m - k) * five(k)).sum::<Rational>(),
            2 => return Err(Error::NuTwoExcluded),
            _ => return Err(Error::InvalidInput(format!("nu = {nu} has no closed form"))),
        };
        Ok(sign(m) * body)
    };
    (1..=n as i64).map(one).collect()
}

/// `c_m = a^m sum_l (-1)^l binom(mu, l) binom(N - mu, m - l)`.
pub fn binomial_closed_form(mu: u32, n: usize, a: &Rational) -> Vec<Rational> {
    let (mu, n) = (mu as i64, n as i64);
    (1..=n)
        .map(|m| {
            let lo = 0.max(m + mu - n);
            let hi = mu.min(m);
            let s: Rational = (lo..=hi)
                .map(|l| sign(l) * binom(&rat_int(mu), l) * binom(&rat_int(n - mu), m - l))
                .sum();
            s * num_traits::pow(a.clone(), m as usize)
        })
        .collect()
}

fn z_minus(a: &Rational) -> IntegerPolynomial {
    IntegerPolynomial::linear(a.clone())
}

fn z_plus(a: &Rational) -> IntegerPolynomial {
    IntegerPolynomial::linear(-a)
}

impl EquilibriumConfig {
    pub fn iso(nu: u32, mu: u32, n: usize, free: &Rational) -> Result<Self> {
        let cbar = iso_cbar(nu, mu, n, free)?;
        Ok(Self {
            family: Family::Iso,
            n,
            nu,
            mu,
            free: (nu == 5).then(|| free.clone()),
            a: None,
            cbar,
        })
    }

    pub fn altgold_binomial(mu: u32, n: usize, a: &Rational) -> Result<Self> {
        if mu as usize > n {
            return Err(Error::InvalidInput(format!("need mu <= N, got mu = {mu}, N = {n}")));
        }
        let p = &pow(&z_minus(a), mu as usize) * &pow(&z_plus(a), n - mu as usize);
        Ok(Self {
            family: Family::AltgoldBinomial,
            n,
            nu: 0,
            mu,
            free: None,
            a: Some(a.clone()),
            cbar: tail_coefficients(&p, n)?,
        })
    }

    /// `(z^2 + c z + (c^2 - a^2)/3) (z - a)^mu (z + a)^(N - 2 - mu)`.
    pub fn altgold_nu2(mu: u32, n: usize, a: &Rational, c: &Rational) -> Result<Self> {
        if n < 2 || mu as usize > n - 2 {
            return Err(Error::InvalidInput(format!(
                "need N >= 2 and mu <= N - 2, got mu = {mu}, N = {n}"
            )));
        }
        let quad = IntegerPolynomial::new(vec![(c * c - a * a) / rat_int(3), c.clone(), Rational::one()]);
        let p = &(&quad * &pow(&z_minus(a), mu as usize)) * &pow(&z_plus(a), n - 2 - mu as usize);
        Ok(Self {
            family: Family::AltgoldNu2,
            n,
            nu: 2,
            mu,
            free: Some(c.clone()),
            a: Some(a.clone()),
            cbar: tail_coefficients(&p, n)?,
        })
    }

    /// `(z - a)^mu (z + a)^(N - mu) [1 - nu a/(z + a) + nu (nu - 1) a^2 / (3 (z + a)^2)
    /// + c sum_l (-2)^l binom(nu - 5, l) / ((l + 5)(l + 4)(l + 3)) (a/(z + a))^(l + 5)]`.
    pub fn altgold_nu5plus(nu: u32, mu: u32, n: usize, a: &Rational, c: &Rational) -> Result<Self> {
        if nu < 5 || (nu + mu) as usize > n {
            return Err(Error::InvalidInput(format!(
                "need nu >= 5 and nu + mu <= N, got nu = {nu}, mu = {mu}, N = {n}"
            )));
        }
        let rest = n - mu as usize;
        let zp = |k: usize| pow(&z_plus(a), rest - k);
        let scaled = |p: IntegerPolynomial, s: Rational| &IntegerPolynomial::constant(s) * &p;
        let nu_r = rat_int(nu as i64);
        let mut bracket = &zp(0) - &scaled(zp(1), &nu_r * a);
        bracket = &bracket + &scaled(zp(2), &nu_r * (&nu_r - Rational::one()) * a * a / rat_int(3));
        for l in 0..=(nu as i64 - 5) {
            let li = l as usize;
            let coef = c * num_traits::pow(rat_int(-2), li) * binom(&rat_int(nu as i64 - 5), l)
                / rat_int((l + 5) * (l + 4) * (l + 3))
                * num_traits::pow(a.clone(), li + 5);
            bracket = &bracket + &scaled(zp(li + 5), coef);
        }
        let p = &pow(&z_minus(a), mu as usize) * &bracket;
        Ok(Self {
            family: Family::AltgoldNu5Plus,
            n,
            nu,
            mu,
            free: Some(c.clone()),
            a: Some(a.clone()),
            cbar: tail_coefficients(&p, n)?,
        })
    }

    /// Ascending coefficients of the equilibrium polynomial in the plain
    /// convention; the isochronous family's `i^m` factors are real only for
    /// even `m`, so this is offered for the plain families.
    pub fn plain_polynomial(&self) -> Option<IntegerPolynomial> {
        if self.family.is_iso() {
            return None;
        }
        let n = self.n;
        let mut asc = vec![Rational::zero(); n + 1];
        asc[n] = Rational::one();
        for (m, c) in self.cbar.iter().enumerate() {
            asc[n - m - 1] = c.clone();
        }
        Some(IntegerPolynomial::new(asc))
    }

    /// Stable sort key: family, nu, mu, free constant.
    pub fn key(&self) -> (Family, u32, u32, Option<Rational>) {
        (self.family, self.nu, self.mu, self.free.clone())
    }
}

/// Free-constant samples for the `nu = 5` isochronous family.
pub fn nu5_samples() -> Vec<Rational> {
    vec![rat_int(0), rat_int(1), rat_int(-3), rat(7, 2)]
}

/// Free-parameter samples for the plain families.
pub fn free_samples() -> Vec<Rational> {
    vec![rat_int(-2), rat_int(0), rat(1, 3), rat_int(1), rat_int(7)]
}

/// Every isochronous equilibrium cell, `nu in {0,1,3,4,5}`, `nu <= mu <= N`;
/// the `nu = 5` cells repeat once per entry of `nu5`.
pub fn enumerate_iso_equilibria(n: usize, nu5: &[Rational]) -> Vec<EquilibriumConfig> {
    let zero = Rational::zero();
    let mut out = Vec::new();
    for nu in [0u32, 1, 3, 4, 5] {
        for mu in nu..=n as u32 {
            let frees: &[Rational] = if nu == 5 { nu5 } else { std::slice::from_ref(&zero) };
            for f in frees {
                out.push(EquilibriumConfig::iso(nu, mu, n, f).expect("cell is in range"));
            }
        }
    }
    out
}

/// The three plain families for `N` and `a`, one member per free sample.
pub fn enumerate_altgold_equilibria(n: usize, a: &Rational, free: &[Rational]) -> Vec<EquilibriumConfig> {
    let mut out = Vec::new();
    for mu in 0..=n as u32 {
        out.push(EquilibriumConfig::altgold_binomial(mu, n, a).expect("cell is in range"));
    }
    if n >= 2 {
        for mu in 0..=(n - 2) as u32 {
            for c in free {
                out.push(EquilibriumConfig::altgold_nu2(mu, n, a, c).expect("cell is in range"));
            }
        }
    }
    for nu in 5..=n as u32 {
        for mu in 0..=(n as u32 - nu) {
            for c in free {
                out.push(EquilibriumConfig::altgold_nu5plus(nu, mu, n, a, c).expect("cell is in range"));
            }
        }
    }
    out
}
