pub mod algebra;
pub mod classes;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod jsonio;
pub mod matrices;
pub mod oracle;
pub mod planted;
pub mod scalars;

pub use error::{Error, Result};
