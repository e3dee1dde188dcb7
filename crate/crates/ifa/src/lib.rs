//! Command-line surface, file formats and threaded scans for [`ifa_core`].

pub mod cli;
mod error;
pub mod format;
pub mod parallel;

pub use error::CliError;
