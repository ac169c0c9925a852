//! Parsers for the textual flag values.

use goldfish_core::polynomials::{parse_rational, Rational};
use goldfish_core::Complex64;

/// `"re,im"` or a bare real part.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let mut parts = s.split(',').map(str::trim);
    let re = parts
        .next()
        .filter(|p| !p.is_empty())
        .ok_or_else(|| format!("empty complex value {s:?}"))?;
    let im = parts.next().unwrap_or("0");
    if parts.next().is_some() {
        return Err(format!("expected \"re,im\", got {s:?}"));
    }
    let num = |p: &str| p.parse::<f64>().map_err(|_| format!("bad number {p:?} in {s:?}"));
    Ok(Complex64::new(num(re)?, num(im)?))
}

pub fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Sorted, deduplicated grid axis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grid(pub Vec<u32>);

/// A list of exact rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalList(pub Vec<Rational>);

/// Comma-separated integers and inclusive ranges, e.g. `"1-4,7"`; an empty
/// string is an empty grid.
pub fn grid(s: &str) -> Result<Grid, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |p: &str| p.trim().parse::<u32>().map_err(|_| format!("bad grid entry {item:?}"));
        match item.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty range {item:?}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(item)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(Grid(out))
}

/// Comma-separated rationals; empty means none.
pub fn rational_list(s: &str) -> Result<RationalList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(rational)
        .collect::<Result<_, _>>()
        .map(RationalList)
}

/// `"nu,mu,n"`.
pub fn cell(s: &str) -> Result<(u32, u32, u32), String> {
    let v: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad cell {s:?}")))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [nu, mu, n] => Ok((*nu, *mu, *n)),
        _ => Err(format!("expected \"nu,mu,n\", got {s:?}")),
    }
}

/// Complex values separated by `;`, e.g. `"1,0;-1,0.5"`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComplexList(pub Vec<Complex64>);

pub fn complex_list(s: &str) -> Result<ComplexList, String> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(complex)
        .collect::<Result<_, _>>()
        .map(ComplexList)
}

/// Concatenation of repeated list flags.
pub fn concat(lists: &[ComplexList]) -> Vec<Complex64> {
    lists.iter().flat_map(|l| l.0.iter().copied()).collect()
}
