//! Trajectory CSV, SVG drawings and JSON reports.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use goldfish_core::Complex64;
use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Complex numbers in reports are `[re, im]`.
pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn write_bytes(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout().write_all(bytes).map_err(|source| CliError::Io {
            path: "stdout".into(),
            source,
        }),
    }
}

pub fn write_json<T: Serialize>(path: Option<&Path>, report: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    write_bytes(path, text.as_bytes())
}

/// One column pair per tracked quantity.
pub fn csv_text(labels: &[String], times: &[f64], rows: &[Vec<Complex64>]) -> String {
    let mut s = String::from("t");
    for l in labels {
        let _ = write!(s, ",re_{l},im_{l}");
    }
    s.push('\n');
    for (t, row) in times.iter().zip(rows) {
        let _ = write!(s, "{t:.16e}");
        for z in row {
            let _ = write!(s, ",{:.16e},{:.16e}", z.re, z.im);
        }
        s.push('\n');
    }
    s
}

/// Labels, times and rows of a trajectory CSV.
pub type Table = (Vec<String>, Vec<f64>, Vec<Vec<Complex64>>);

/// Inverse of [`csv_text`].
pub fn parse_csv(text: &str) -> Result<Table, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty CSV")?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.first() != Some(&"t") || cols.len().is_multiple_of(2) {
        return Err(format!("unexpected header {header:?}"));
    }
    let labels = cols[1..]
        .chunks(2)
        .map(|c| c[0].trim_start_matches("re_").to_string())
        .collect();
    let mut times = Vec::new();
    let mut rows = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let v: Vec<f64> = line
            .split(',')
            .map(|x| x.parse::<f64>().map_err(|_| format!("bad number {x:?}")))
            .collect::<Result<_, _>>()?;
        if v.len() != cols.len() {
            return Err(format!("row has {} fields, header {}", v.len(), cols.len()));
        }
        times.push(v[0]);
        rows.push(v[1..].chunks(2).map(|p| Complex64::new(p[0], p[1])).collect());
    }
    Ok((labels, times, rows))
}

/// Complex-plane drawing with one curve per column of `rows`. A curve that
/// returns to its start is drawn as a closed polygon.
pub fn svg_text(rows: &[Vec<Complex64>]) -> String {
    const SIZE: f64 = 600.0;
    const MARGIN: f64 = 20.0;
    let width = rows.first().map_or(0, Vec::len);
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for z in rows.iter().flatten() {
        lo_x = lo_x.min(z.re);
        hi_x = hi_x.max(z.re);
        lo_y = lo_y.min(z.im);
        hi_y = hi_y.max(z.im);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-12);
    let map = |z: Complex64| {
        let x = MARGIN + (z.re - lo_x) / span * (SIZE - 2.0 * MARGIN);
        let y = SIZE - MARGIN - (z.im - lo_y) / span * (SIZE - 2.0 * MARGIN);
        format!("{x:.3},{y:.3}")
    };
    let colours = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
    ];
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for k in 0..width {
        let path: Vec<Complex64> = rows.iter().map(|r| r[k]).collect();
        let (first, last) = (path[0], path[path.len() - 1]);
        let closed = path.len() > 2 && (first - last).norm() <= 1e-6 * (1.0 + first.norm());
        let points: Vec<String> = path.iter().map(|&z| map(z)).collect();
        let tag = if closed { "polygon" } else { "polyline" };
        let _ = writeln!(
            s,
            "<{tag} fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>",
            colours[k % colours.len()],
            points.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}
