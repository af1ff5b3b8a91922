//! Generalized Neumann solution of the two-phase time-fractional Stefan problem.

pub mod caputo;
pub mod error;
pub mod special_fn;
pub mod stefan;
pub mod verify;

pub use error::{Error, Result};
