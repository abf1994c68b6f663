//! Exact integer and rational linear algebra.

mod matrix;
mod poly;
mod sublattice;

pub use matrix::{char_poly, definiteness, triangular_inverse, Definiteness, IntMatrix};
pub use poly::IntPolynomial;
pub use sublattice::{
    clear_denominators, complete_basis, integer_kernel, rational_kernel, row_hermite, Completion,
};
