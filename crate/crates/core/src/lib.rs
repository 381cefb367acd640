//! Steenrod operations on the Hochschild homology of free loop spaces, computed from a
//! free minimal model over F_p.

pub mod algebra;
pub mod chain;
pub mod cli;
pub mod complex;
pub mod error;
pub mod field;
pub mod hochschild;
pub mod linalg;
pub mod resolution;
pub mod steenrod;

pub use chain::Chain;
pub use error::{Error, Result};
pub use field::PrimeField;
