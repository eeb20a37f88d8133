pub mod algebra;
pub mod complexes;
pub mod mf;
pub mod operators;
pub mod error;
pub mod fixtures;
pub mod extsupport;

pub use error::{Error, Result};
