pub mod cli;
pub mod diagnostics;
pub mod diagram;
pub mod error;
pub mod field;
pub mod ingest;
pub mod intervals;
pub mod io;
pub mod ladder;
pub mod linalg;
pub mod quiver;
pub mod reduction;
pub mod zigzag;

pub use error::{Error, Result};
