//! Solvable goldfish many-body models.
//!
//! The crate covers the particle, coefficient and matrix formulations of the
//! goldfish family, their isochronous variants, exact equilibria and the
//! exact spectra of the linearised coefficient flow.

pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod linalg;
pub mod polynomials;
pub mod spectrum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
