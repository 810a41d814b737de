//! File formats, subcommands and parameter sweeps for the `tomoinfo` binary.
//!
//! The numerical work lives in `tomoinfo-core`; this crate adds JSON and CSV
//! I/O with fixed 17-digit float formatting, parallel sweeps, and the mapping
//! of failures onto exit codes (2 for bad input, 3 for singular designs).

pub mod commands;
pub mod error;
pub mod formats;
pub mod sweep;

pub use error::CliError;
