use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Trajectory;

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodReport {
    /// Smallest multiple of the base period that closes the trajectory.
    pub p: Option<usize>,
    /// Deviation at `p`, or the smallest deviation seen when `p` is `None`.
    pub deviation: f64,
    /// Deviation for each tested multiple `1..=p_max` (`None` when no pair
    /// of samples was a multiple apart).
    pub per_multiple: Vec<Option<f64>>,
}

fn find_time(times: &[f64], t: f64) -> Option<usize> {
    let eps = 1e-9 * (1.0 + t.abs());
    let idx = times.partition_point(|&s| s < t - eps);
    (idx < times.len() && (times[idx] - t).abs() <= eps).then_some(idx)
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Smallest `p <= p_max` such that the state at `t + p * base_period`
/// matches the state at `t` within `tol` for every sample `t` of the first
/// base period. States are compared componentwise along the labelled
/// trajectory, so label exchanges among particles show up as `p > 1`.
pub fn detect_period(traj: &Trajectory, base_period: f64, p_max: usize, tol: f64) -> Result<PeriodReport> {
    let (Some(&t0), Some(&t1)) = (traj.times.first(), traj.times.last()) else {
        return Err(Error::TrajectoryTooShort {
            needed: p_max as f64 * base_period,
            available: 0.0,
        });
    };
    let needed = p_max as f64 * base_period;
    if t1 - t0 < needed - 1e-9 * (1.0 + needed) {
        return Err(Error::TrajectoryTooShort {
            needed,
            available: t1 - t0,
        });
    }
    let mut per_multiple = Vec::with_capacity(p_max);
    for p in 1..=p_max {
        let shift = p as f64 * base_period;
        let mut dev: Option<f64> = None;
        for (i, &t) in traj.times.iter().enumerate() {
            if t > t0 + base_period + 1e-9 {
                break;
            }
            if let Some(j) = find_time(&traj.times, t + shift) {
                let d = distance(&traj.states[i], &traj.states[j]);
                dev = Some(dev.map_or(d, |v: f64| v.max(d)));
            }
        }
        per_multiple.push(dev);
    }
    let found = per_multiple
        .iter()
        .position(|d| d.is_some_and(|v| v <= tol))
        .map(|k| k + 1);
    let deviation = match found {
        Some(p) => per_multiple[p - 1].unwrap_or(0.0),
        None => per_multiple.iter().flatten().copied().fold(f64::INFINITY, f64::min),
    };
    Ok(PeriodReport {
        p: found,
        deviation,
        per_multiple,
    })
}
