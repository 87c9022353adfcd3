//! Command-line front end for `qbpa`: fuse evidence files, emit pairwise
//! matrices and reproduce the reference case studies.

pub mod app;
pub mod fixtures;
pub mod reproduce;

pub use app::{run, Cli, CliError};
