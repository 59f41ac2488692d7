//! Exact and high-precision evaluation of Dirichlet L-function data at
//! non-positive integers and the scalar factors built from them.

pub mod error;
pub mod exact;
pub mod lfunctions;
pub mod dirichlet;
pub mod special;
pub mod conjecture;
pub mod parse;

pub use error::{Error, Result};
