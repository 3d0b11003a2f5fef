//! Command-line front end: instance files, command implementations and
//! exit codes.

pub mod commands;
pub mod error;
pub mod file;
