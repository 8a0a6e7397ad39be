//! Polynomials over GF(p), polynomial matrices, column Hermite normal form,
//! and canonical labels for lattice classes.

mod lattice;
mod matrix;
mod poly;

pub use lattice::{lattice_contains, CanonicalLabel, Lattice};
pub use matrix::PolyMatrix;
pub use poly::Poly;
