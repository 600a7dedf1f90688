//! Library surface of the CLI so integration tests can drive the command
//! handlers directly.

pub mod commands;
pub mod config;
pub mod report;
