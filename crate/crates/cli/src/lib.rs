//! Batch front-end: file formats, check suites, reports and graph export.

pub mod dot;
pub mod format;
pub mod report;
pub mod suites;

use thiserror::Error;

/// Input or usage problems; every variant maps to exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error("{0}")]
    Core(#[from] twarrow_core::Error),

    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
