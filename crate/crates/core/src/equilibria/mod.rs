//! Equilibrium configurations of the isochronous and plain coefficient
//! systems in exact rational arithmetic.

mod families;
mod recursion;
mod residual;

pub use families::{
    binom, binomial_closed_form, cmbar_closed_form, enumerate_altgold_equilibria, enumerate_iso_equilibria,
    free_samples, iso_cbar, nu5_samples, EquilibriumConfig, Family,
};
pub use recursion::{
    chi_recursion_residual, iso_phi1, iso_recursion_residual, solve_chi_recursion, solve_iso_recursion,
    RecursionSolution,
};
pub use residual::{
    altgold_residual, equilibrium_residual, genuineness_check, genuineness_of_roots, iso_residual, Genuineness,
    GenuinenessReport, ResidualSystem, CLUSTER_TOL,
};
