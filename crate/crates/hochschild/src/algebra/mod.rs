//! Algebras, bimodules, bound quiver presentations and the tensor and Hom
//! calculus of bimodules.

#[allow(clippy::module_inception)]
pub mod algebra;
pub mod bimodule;
pub mod catalog;
pub mod presentation;
pub mod quiver;
pub mod tensor;

pub use algebra::{ground_field, FinDimAlgebra};
pub use bimodule::{free_corner_bimodule, hom_bimodule, peirce_quiver, same_algebra, AlgRef, Bimodule};
pub use presentation::{monomial_algebra, parse_word, RewritePresentation, Rule, Word};
pub use quiver::{Arrow, Quiver};
pub use tensor::{tensor_dim_plain, tensor_over, TensorProduct};
