//! Command-line front end and JSON formats for `fedosov-core`.

pub mod cli;
pub mod fixtures;
pub mod json;
pub mod report;
