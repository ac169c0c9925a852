//! Monic polynomials in the plain and tilde conventions, root finding, and
//! exact rational polynomial tools.

mod exact;
mod monic;
mod roots;

pub use exact::{
    bareiss_det, determinant, format_rational, integer_roots, interpolate, parse_rational, pencil_charpoly_exact, rat,
    rat_int, rational_to_f64, IntegerPolynomial, Rational, RationalMatrix,
};
pub use monic::{coeff_velocities, expand_roots, i_pow, zero_velocities, Convention, MonicPolynomial};
pub use roots::{cluster_roots, find_roots};
