pub mod cf;
pub mod chain;
pub mod cli;
pub mod clifford;
pub mod cycle;
pub mod error;
pub mod mat2;
pub mod render;
pub mod scalar;

pub use error::{Error, Result};
