//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong inside the numerical and exact kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("QR iteration did not converge after {iterations} iterations")]
    EigenNoConvergence { iterations: usize },

    #[error("step size fell below {h_min:e}; movable singularity near t = {t}")]
    MovableSingularity { t: f64, h_min: f64 },

    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },

    #[error("step budget of {max_steps} exhausted at t = {t}")]
    StepBudget { t: f64, max_steps: usize },

    #[error("particles {i} and {j} collided (separation {separation:e})")]
    Collision { i: usize, j: usize, separation: f64 },

    #[error("eigenvalue tracking is ambiguous between frames {frame} and {next}")]
    AmbiguousTracking { frame: usize, next: usize },

    #[error("root finder did not converge (degree {degree})")]
    RootsNoConvergence { degree: usize },

    #[error("trajectory too short: need t_end - t_0 >= {needed}, have {available}")]
    TrajectoryTooShort { needed: f64, available: f64 },

    #[error("nu = 2 is excluded: phi_1 = nu(nu+1)/(2(2-nu)) requires nu != 2")]
    NuTwoExcluded,

    #[error("recursion for nu = {nu} is contradictory at m = {m}")]
    RecursionContradiction { nu: u32, m: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
