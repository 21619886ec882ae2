//! Command-line front end for `nazeta-core`: configuration files, JSON and
//! CSV formats, and the acceptance verification suites.

pub mod cli;
pub mod config;
pub mod formats;
pub mod random;
pub mod report;
pub mod suites;
