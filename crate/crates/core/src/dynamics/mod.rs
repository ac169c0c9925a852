//! Goldfish-type models in particle, coefficient and matrix form, their
//! direct and spectral solution, and the isochronizing change of variables.

mod initial;
mod model;
mod pde;
mod period;
mod rhs;
mod simulate;
mod structural;
mod trick;

pub use initial::{
    build_matrix_initial_data, build_matrix_initial_data_with_signs, coefficient_convention, coefficients_to_particles,
    matrix_companion, particle_counterpart,
};
pub use model::{CoefficientState, MatrixFlowState, ModelSpec, ParticleState, State, StateKind, System};
pub use pde::{pde_residual, pde_residual_at, TimeDerivative};
pub use period::{detect_period, PeriodReport};
pub use rhs::{
    eval_matrix_rhs, eval_rhs, first_order_rhs, matrix_acceleration, second_derivative, COLLISION_THRESHOLD,
};
pub use simulate::{charpoly_with_derivative, evolve_matrix_flow, simulate, Method, Simulation};
pub use structural::{quartic_n2, structural_residuals, ResidualReport, StructuralCheck};
pub use trick::{integrate_tau_path, trick_tau, trick_transform, trick_transform_trajectory, TrickDirection};
