//! Hochschild cohomology of finite dimensional algebras built from
//! k-categories with zero compositions.

pub mod error;
pub mod algebra;
pub mod exactla;
pub mod qset;
pub mod trajectory;
pub mod complex;
pub mod instances;
pub mod homalg;
pub mod structure;
pub mod cli;

pub use error::{Error, Result};
