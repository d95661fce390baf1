//! File formats and command-line front end for [`foldact_core`].
//!
//! Exit codes: 0 success, 2 input or validation error, 3 numeric or solver
//! failure.

pub mod cli;
pub mod commands;
pub mod config;
pub mod formats;

use std::fmt;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

/// Failure carrying its process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_NUMERIC,
            message: message.into(),
        }
    }
}

impl From<foldact_core::Error> for CliError {
    fn from(e: foldact_core::Error) -> Self {
        if e.is_numeric() {
            CliError::numeric(e.to_string())
        } else {
            CliError::input(e.to_string())
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}
