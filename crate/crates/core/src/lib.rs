pub mod algebra;
pub mod complex;
pub mod config;
pub mod counterexample;
pub mod derived;
pub mod error;
pub mod hereditary;
pub mod linalg;
pub mod random;
pub mod resolution;

pub use error::{Error, Result};
