//! Exact linear algebra over the rationals and prime fields.

pub mod elim;
pub mod field;
pub mod sparse;
pub mod subspace;

pub use elim::{column_space, homology_dim, kernel_basis, rank, row_space, solve_homogeneous, ColumnReducer, Echelon};
pub use field::{Field, FieldSpec, PrimeField, Rational, Rationals};
pub use sparse::{SparseMatrix, SparseVec};
pub use subspace::Subspace;
