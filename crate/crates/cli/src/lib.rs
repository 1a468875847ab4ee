//! Library side of the `rdc` binary: ingestion, config handling, and the
//! subcommand drivers.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
