//! Continuous labelling of eigenvalue frames by minimum-cost matching.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Paths obtained by threading a sequence of unordered frames.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackedPaths {
    pub times: Vec<f64>,
    /// `paths[k][f]` is the position of path `k` in frame `f`.
    pub paths: Vec<Vec<Complex64>>,
    /// `indices[k][f]` is the slot of path `k` inside the input frame `f`.
    pub indices: Vec<Vec<usize>>,
    /// Composition of the frame-to-frame assignments: path starting in slot
    /// `k` of the first frame ends in slot `monodromy[k]` of the last frame.
    pub monodromy: Vec<usize>,
}

impl TrackedPaths {
    /// Permutation sending path `k` to the first-frame slot nearest to its
    /// final position. Meaningful when the last frame closes a period.
    pub fn closing_permutation(&self) -> Vec<usize> {
        let first: Vec<Complex64> = self.paths.iter().map(|p| p[0]).collect();
        let last: Vec<Complex64> = self.paths.iter().map(|p| *p.last().unwrap()).collect();
        let cost: Vec<Vec<f64>> = last
            .iter()
            .map(|a| first.iter().map(|b| (a - b).norm_sqr()).collect())
            .collect();
        min_cost_assignment(&cost)
    }

    /// Order of [`Self::closing_permutation`] as a group element.
    pub fn closing_order(&self) -> usize {
        permutation_order(&self.closing_permutation())
    }
}

/// Least common multiple of the cycle lengths of a permutation.
pub fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Hungarian algorithm for a square cost matrix; returns `row -> column`.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    // potentials formulation, 1-based with a sentinel column 0
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if p[j] != 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

fn min_gap(frame: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..frame.len() {
        for j in i + 1..frame.len() {
            gap = gap.min((frame[i] - frame[j]).norm());
        }
    }
    gap
}

/// Threads `frames` into continuous paths. Each step is accepted only when
/// the largest displacement stays below half the smallest gap of the
/// previous frame.
pub fn track_trajectories(frames: &[Vec<Complex64>], times: &[f64]) -> Result<TrackedPaths> {
    if frames.len() != times.len() {
        return Err(Error::DimensionMismatch {
            expected: frames.len(),
            found: times.len(),
        });
    }
    let n = frames.first().map_or(0, Vec::len);
    if let Some(bad) = frames.iter().find(|f| f.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let mut slot: Vec<usize> = (0..n).collect();
    let mut indices: Vec<Vec<usize>> = (0..n).map(|k| vec![k]).collect();
    for f in 1..frames.len() {
        let prev = &frames[f - 1];
        let cur = &frames[f];
        let cost: Vec<Vec<f64>> = prev
            .iter()
            .map(|a| cur.iter().map(|b| (a - b).norm_sqr()).collect())
            .collect();
        let assign = min_cost_assignment(&cost);
        let max_disp = (0..n).map(|i| (prev[i] - cur[assign[i]]).norm()).fold(0.0, f64::max);
        if n > 1 && !(max_disp < 0.5 * min_gap(prev)) {
            return Err(Error::AmbiguousTracking { frame: f - 1, next: f });
        }
        for k in 0..n {
            slot[k] = assign[slot[k]];
            indices[k].push(slot[k]);
        }
    }
    let paths = indices
        .iter()
        .map(|idx| idx.iter().enumerate().map(|(f, &s)| frames[f][s]).collect())
        .collect();
    Ok(TrackedPaths {
        times: times.to_vec(),
        paths,
        indices,
        monodromy: slot,
    })
}

/// Largest distance under the optimal matching of two equally sized sets.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets of different size");
    let cost: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| (x - y).norm_sqr()).collect())
        .collect();
    min_cost_assignment(&cost)
        .iter()
        .enumerate()
        .map(|(i, &j)| (a[i] - b[j]).norm())
        .fold(0.0, f64::max)
}
