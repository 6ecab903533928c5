//! Exact linear algebra over prime fields.

mod dense;
mod field;
mod sparse;

pub use dense::{DenseMatrix, Rref};
pub use field::PrimeField;
pub use sparse::{EliminationConfig, SparseMatrix, DEFAULT_DENSE_THRESHOLD};

pub(crate) use dense::kernel_from_rref;
