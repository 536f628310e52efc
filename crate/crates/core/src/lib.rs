//! Exact computation of Hodge ideals of plane curve singularities.

pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod poly;
pub mod projective;
pub mod rational;
pub mod resolution;
pub mod surface;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
