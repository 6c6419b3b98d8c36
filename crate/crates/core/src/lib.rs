#[cfg(feature = "cli")]
pub mod cli;
pub mod duality;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod motive;
pub mod oracle;
pub mod rootsys;
pub mod walks;

pub use error::{Error, Result};
