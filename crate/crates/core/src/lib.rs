pub mod circuits;
pub mod cli;
pub mod density;
pub mod detect;
pub mod error;
pub mod experiment;
pub mod heisenberg;
pub mod pauli;

pub use error::{Error, Result};
