//! File formats, JSON reports and the command-line driver for `transemi-core`.

pub mod cli;
pub mod commands;
pub mod crosscheck;
pub mod formats;
pub mod json;
