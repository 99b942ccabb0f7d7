//! Exact linear algebra over ℤ/m.

pub mod arith;
pub mod group;
pub mod howell;
pub mod matrix;
pub mod smith;

pub use group::{AdditivePresentation, Subgroup};
pub use howell::{howell_form, kernel, solve, Solver};
pub use matrix::ZmMatrix;
