pub mod algebra;
pub mod cli;
pub mod error;
pub mod localgeom;
pub mod oracle;
pub mod pencil;
pub mod report;
pub mod tower;

pub use error::{Error, Result};
