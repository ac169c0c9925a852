//! Parallel grids of spectral checks.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use goldfish_core::equilibria::{nu5_samples, EquilibriumConfig};
use goldfish_core::polynomials::{format_rational, rat, rat_int, Rational};
use goldfish_core::spectrum::{
    build_pencil, c215_polynomial, c217_min_n, spectral_report, verify_conjectures, Conjecture,
};
use goldfish_core::Error;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{SweepArgs, SweepKind};
use crate::commands::{finish, verdict_json};
use crate::error::{CliError, CliResult};
use crate::output::write_bytes;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Cell {
    nu: u32,
    mu: Rational,
    n: u32,
}

#[derive(Serialize)]
struct CellResult {
    nu: u32,
    mu: String,
    n: u32,
    perturbed: bool,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn in_domain(kind: SweepKind, c: &Cell) -> bool {
    let (nu, n) = (rat_int(c.nu as i64), rat_int(c.n as i64));
    if c.mu < nu || c.mu > n || c.n == 0 {
        return false;
    }
    match kind {
        SweepKind::Integrality | SweepKind::C215 => c.mu.is_integer(),
        SweepKind::C217 => c.n as usize >= c217_min_n(c.nu),
    }
}

fn cells(a: &SweepArgs) -> Vec<Cell> {
    let mut out = BTreeSet::new();
    for &n in &a.n.0 {
        for &nu in &a.nu.0 {
            let mus: Vec<Rational> = match &a.mu {
                Some(list) => list.0.clone(),
                None => (nu..=n).map(|m| rat_int(m as i64)).collect(),
            };
            for mu in mus {
                let c = Cell { nu, mu, n };
                if in_domain(a.kind, &c) {
                    out.insert(c);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Integer `mu` of an integrality or product-formula cell.
fn int_mu(c: &Cell) -> u32 {
    c.mu.to_integer().to_u32().expect("domain keeps mu small")
}

fn configs(c: &Cell, free: &[Rational], perturbed: bool) -> Result<Vec<EquilibriumConfig>, Error> {
    let zero = [rat_int(0)];
    let frees: &[Rational] = if c.nu == 5 { free } else { &zero };
    frees
        .iter()
        .map(|f| {
            let mut cfg = EquilibriumConfig::iso(c.nu, int_mu(c), c.n as usize, f)?;
            if perturbed {
                cfg.cbar[0] += rat(1, 2);
            }
            Ok(cfg)
        })
        .collect()
}

fn run_cell(
    kind: SweepKind,
    c: &Cell,
    free: &[Rational],
    tol: f64,
    perturbed: bool,
) -> Result<(bool, serde_json::Value), Error> {
    match kind {
        SweepKind::Integrality => {
            let mut ok = true;
            let mut roots = Vec::new();
            for cfg in configs(c, free, perturbed)? {
                let rep = spectral_report(&cfg)?;
                ok &= rep.all_integers;
                roots.push(rep.integer_roots.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            Ok((ok, serde_json::json!({ "integer_roots": roots })))
        }
        SweepKind::C215 if perturbed => {
            let claimed = c215_polynomial(c.nu, int_mu(c), c.n as usize)?;
            let mut ok = true;
            for cfg in configs(c, free, true)? {
                ok &= build_pencil(&cfg)?.charpoly()? == claimed;
            }
            Ok((ok, serde_json::Value::Null))
        }
        SweepKind::C215 | SweepKind::C217 => {
            if perturbed {
                return Err(Error::Unsupported("perturbing a partial-spectrum cell".into()));
            }
            let which = if kind == SweepKind::C215 {
                Conjecture::C215
            } else {
                Conjecture::C217
            };
            let v = verify_conjectures(which, c.nu, &c.mu, c.n as usize, free, tol)?;
            Ok((v.holds, verdict_json(&v)))
        }
    }
}

fn pool() -> CliResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("GOLDFISH_THREADS") {
        let k: usize = v
            .parse()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| CliError::Usage(format!("GOLDFISH_THREADS must be a positive integer, got {v:?}")))?;
        b = b.num_threads(k.min(std::thread::available_parallelism().map_or(k, usize::from)));
    }
    b.build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

fn matrix_csv(results: &[CellResult], ns: &[u32]) -> String {
    let mut s = String::from("nu,mu");
    for n in ns {
        let _ = write!(s, ",N={n}");
    }
    s.push('\n');
    let rows: BTreeSet<(u32, &str)> = results.iter().map(|r| (r.nu, r.mu.as_str())).collect();
    for (nu, mu) in rows {
        let _ = write!(s, "{nu},{mu}");
        for &n in ns {
            let status = results
                .iter()
                .find(|r| r.nu == nu && r.mu == mu && r.n == n)
                .map_or("", |r| r.status);
            let _ = write!(s, ",{status}");
        }
        s.push('\n');
    }
    s
}

pub fn sweep_cmd(a: &SweepArgs, args: &[String]) -> CliResult<bool> {
    let start = Instant::now();
    let free = a.free.clone().map_or_else(nu5_samples, |f| f.0);
    let grid = cells(a);
    let perturb = |c: &Cell| {
        a.perturb
            .iter()
            .any(|&(nu, mu, n)| nu == c.nu && rat_int(mu as i64) == c.mu && n == c.n)
    };
    let results: Vec<CellResult> = pool()?.install(|| {
        grid.par_iter()
            .map(|c| {
                let perturbed = perturb(c);
                let (status, detail, error) = match run_cell(a.kind, c, &free, a.tol, perturbed) {
                    Ok((true, d)) => ("pass", Some(d), None),
                    Ok((false, d)) => ("fail", Some(d), None),
                    Err(e) => ("error", None, Some(e.to_string())),
                };
                CellResult {
                    nu: c.nu,
                    mu: format_rational(&c.mu),
                    n: c.n,
                    perturbed,
                    status,
                    detail: detail.filter(|d| !d.is_null()),
                    error,
                }
            })
            .collect()
    });
    if let Some(path) = &a.csv {
        write_bytes(Some(path), matrix_csv(&results, &a.n.0).as_bytes())?;
    }
    let count = |s: &str| results.iter().filter(|r| r.status == s).count();
    let summary = serde_json::json!({
        "cells": results.len(),
        "pass": count("pass"),
        "fail": count("fail"),
        "error": count("error"),
    });
    let passed = results.iter().all(|r| r.status == "pass");
    let kind = match a.kind {
        SweepKind::Integrality => "integrality",
        SweepKind::C215 => "c215",
        SweepKind::C217 => "c217",
    };
    finish(
        "sweep",
        args,
        &a.report,
        start,
        passed,
        serde_json::json!({ "kind": kind, "summary": summary, "cells": results }),
    )
}
