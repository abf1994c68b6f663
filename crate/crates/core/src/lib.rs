//! Exact computations with unimodular bilinear lattices given by unit
//! upper-triangular integer matrices: braid-group orbits, monodromy spectra,
//! variance and Bernoulli-moment inequalities, classification of the
//! positive definite and semidefinite cases, and spectra on the HOR simplex.

pub mod braid;
pub mod cyclotomic;
pub mod data;
pub mod error;
pub mod hor;
pub mod lattice;
pub mod linalg;
pub mod moments;
pub mod rational;
pub mod report;
pub mod roots;
pub mod semidef;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{FormParity, LatticeVector, TriangularSeed};
pub use linalg::{Definiteness, IntMatrix, IntPolynomial};
pub use rational::Rational;
