//! Exact linear algebra over prime fields.

mod dense;
mod field;
mod sparse;

pub use dense::{DenseMatrix, Rref};
pub use field::{Field, Fp};
pub use sparse::SparseMatrix;
