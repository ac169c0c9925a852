//! Exact rational polynomials and matrices: fraction-free determinants,
//! interpolation of `det(p^2 I + p A + B)` and exact integer root extraction.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `"n/d"`, or `"n"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Polynomial in one variable with rational coefficients, ascending powers,
/// kept without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<Rational>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `p - r`.
    pub fn linear(r: Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    /// `prod (p - r)`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear(r.clone()))
    }

    pub fn from_integer_roots(roots: &[i64]) -> Self {
        let rs: Vec<Rational> = roots.iter().map(|&r| rat_int(r)).collect();
        Self::from_roots(&rs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder of division by `p - r`.
    pub fn divide_linear(&self, r: &Rational) -> (Self, Rational) {
        if self.coeffs.is_empty() {
            return (Self::zero(), Rational::zero());
        }
        let n = self.coeffs.len() - 1;
        let mut q = vec![Rational::zero(); n];
        let mut carry = Rational::zero();
        for k in (0..=n).rev() {
            let v = &self.coeffs[k] + &carry * r;
            if k == 0 {
                return (Self::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Divides out the leading coefficient.
    pub fn monic(&self) -> Self {
        let lead = self.leading();
        if lead.is_zero() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "p")?,
                _ => write!(f, "p^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn add(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        IntegerPolynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn sub(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        IntegerPolynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) - rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(out)
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        Self {
            n,
            data: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(rational_to_f64).collect()
    }

    pub fn determinant(&self) -> Rational {
        determinant(self)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

/// Fraction-free Bareiss elimination over the integers.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact determinant: rows are cleared of denominators, then Bareiss.
pub fn determinant(m: &RationalMatrix) -> Rational {
    let n = m.n;
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let l = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(m[(i, j)].denom()));
            scale *= &l;
            (0..n)
                .map(|j| {
                    let v = &m[(i, j)] * Rational::from_integer(l.clone());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    Rational::new(bareiss_det(rows), scale)
}

/// Exact Lagrange interpolation through `(x_k, y_k)`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> IntegerPolynomial {
    assert_eq!(xs.len(), ys.len());
    let mut acc = IntegerPolynomial::zero();
    for (k, (xk, yk)) in xs.iter().zip(ys).enumerate() {
        if yk.is_zero() {
            continue;
        }
        let mut basis = IntegerPolynomial::constant(yk.clone());
        for (j, xj) in xs.iter().enumerate() {
            if j != k {
                let factor = IntegerPolynomial::new(vec![-xj / (xk - xj), (xk - xj).recip()]);
                basis = &basis * &factor;
            }
        }
        acc = &acc + &basis;
    }
    acc
}

fn pencil_at(a: &RationalMatrix, b: &RationalMatrix, p: &Rational) -> RationalMatrix {
    let p2 = p * p;
    RationalMatrix::from_fn(a.n, |i, j| {
        let mut v = &a[(i, j)] * p + &b[(i, j)];
        if i == j {
            v += &p2;
        }
        v
    })
}

/// `det(p^2 I + p A + B)` exactly, by evaluation at `p = -N..N` and
/// interpolation; the result is re-checked at `p = N + 1`.
pub fn pencil_charpoly_exact(a: &RationalMatrix, b: &RationalMatrix) -> Result<IntegerPolynomial> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    let n = a.n as i64;
    let xs: Vec<Rational> = (-n..=n).map(rat_int).collect();
    let ys: Vec<Rational> = xs.iter().map(|p| determinant(&pencil_at(a, b, p))).collect();
    let q = interpolate(&xs, &ys);
    let check = rat_int(n + 1);
    let expected = determinant(&pencil_at(a, b, &check));
    if q.eval(&check) != expected || q.degree() != Some(2 * a.n) || !q.leading().is_one() {
        return Err(Error::InvalidInput(
            "pencil determinant failed its interpolation cross-check".into(),
        ));
    }
    Ok(q)
}

/// Rigorous bound on the root moduli (Fujiwara).
fn root_bound(q: &IntegerPolynomial) -> BigInt {
    let n = q.coeffs.len() - 1;
    let lead = q.leading();
    let mut bound = 0.0f64;
    for k in 1..=n {
        let c = (&q.coeffs[n - k] / &lead).abs();
        let mut v = rational_to_f64(&c);
        if k == n {
            v /= 2.0;
        }
        bound = bound.max(v.powf(1.0 / k as f64));
    }
    let b = 2.0 * bound * (1.0 + 1e-9) + 1.0;
    BigInt::from(b.ceil() as i128)
}

fn integer_coeffs(q: &IntegerPolynomial) -> Vec<BigInt> {
    let l = q.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let l = Rational::from_integer(l);
    q.coeffs.iter().map(|c| (c * &l).to_integer()).collect()
}

fn is_integer_root(c: &[BigInt], r: &BigInt) -> bool {
    let mut acc = BigInt::zero();
    for coef in c.iter().rev() {
        acc = acc * r + coef;
    }
    acc.is_zero()
}

/// Integer roots of `q` with multiplicity (ascending) and the cofactor left
/// after deflating all of them exactly.
pub fn integer_roots(q: &IntegerPolynomial) -> (Vec<BigInt>, IntegerPolynomial) {
    let mut rest = q.clone();
    let mut roots = Vec::new();
    if rest.is_zero() {
        return (roots, rest);
    }
    while rest.coeffs.len() > 1 && rest.coeffs[0].is_zero() {
        rest = IntegerPolynomial::new(rest.coeffs[1..].to_vec());
        roots.push(BigInt::zero());
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    let bound = root_bound(&rest);
    let mut ints = integer_coeffs(&rest);
    let mut r = -bound.clone();
    while r <= bound && rest.degree().unwrap_or(0) > 0 {
        while rest.degree().unwrap_or(0) > 0 && is_integer_root(&ints, &r) {
            let (quot, rem) = rest.divide_linear(&Rational::from_integer(r.clone()));
            debug_assert!(rem.is_zero());
            rest = quot;
            ints = integer_coeffs(&rest);
            roots.push(r.clone());
        }
        r += 1;
    }
    roots.sort();
    (roots, rest)
}
