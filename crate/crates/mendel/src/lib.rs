//! File formats and the `mendel` command-line tool.

pub mod cli;
pub mod format;
