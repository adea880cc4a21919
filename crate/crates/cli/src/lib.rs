//! Command-line workbench for Bolza-like surfaces.
//!
//! Every subcommand prints a short human summary, or with `--json` a
//! [`doc::Document`]. Output is deterministic for fixed arguments.

pub mod args;
mod commands;
pub mod decimal;
pub mod doc;
pub mod svg;

pub use commands::{execute, exit_code, run, writes_own_file, Outcome, Status};
