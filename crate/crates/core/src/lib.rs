//! Completion of partial edge-labelled graphs into primitive 3-constrained
//! metric classes, with a brute-force oracle and obstacle extraction.

pub mod cli;
pub mod completion;
pub mod error;
pub mod obstacles;
pub mod oracle;
pub mod params;
pub mod space;

pub use error::{Error, Result};
