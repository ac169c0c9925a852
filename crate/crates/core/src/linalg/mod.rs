//! Dense complex linear algebra, ODE integration and eigenvalue tracking.

mod eigen;
mod matrix;
mod ode;
mod tracking;

pub use eigen::{eigenvalue_velocity, eigenvalues, eigenvector, hessenberg};
pub use matrix::{ComplexMatrix, Lu};
pub use ode::{integrate_ode, integrate_ode_with, OdeOptions, Trajectory, TOL_MAX, TOL_MIN};
pub use tracking::{min_cost_assignment, multiset_distance, permutation_order, track_trajectories, TrackedPaths};
