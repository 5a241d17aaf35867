//! Computational representation theory over finite fields: finite fields,
//! dense linear algebra, permutation groups, algebras and their modules,
//! bimodule functors and reciprocity checks between symmetric algebras.

pub mod algebra;
pub mod bimodule;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod meataxe;
pub mod modules;
pub mod poly;
pub mod reciprocity;

pub use algebra::Algebra;
pub use bimodule::Bimodule;
pub use error::{Error, Result};
pub use field::{FiniteField, Scalar};
pub use linalg::Matrix;
pub use modules::Module;
