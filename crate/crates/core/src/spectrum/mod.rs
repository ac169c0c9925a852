//! Linearisation about isochronous equilibria: the quadratic pencil, its
//! exact and numeric spectra, and the conjectured spectra.

mod conjectures;
mod pencil;

pub use conjectures::{
    c215_polynomial, c215_roots, c217_claimed, c217_min_n, verify_conjectures, Conjecture, ConjectureVerdict,
    Containment, Counterexample,
};
pub use pencil::{
    build_pencil, build_pencil_from_cbar, eqgamma_rhs, exact_spectrum, solve_pencil_numeric, spectral_report,
    verify_integrality, ExactSpectrum, QuadraticPencil, SpectralReport,
};
