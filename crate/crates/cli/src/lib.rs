//! Library surface of the `coex` command-line tool: configuration
//! parsing, subcommand implementations and deterministic table output.

pub mod commands;
pub mod config;
pub mod output;

/// Error classes mapped onto exit codes: usage 1, config 2, numeric 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(String),
    Numeric(String),
}

impl CliError {
    pub fn numeric(e: impl std::fmt::Display) -> Self {
        CliError::Numeric(e.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Config(m) | CliError::Numeric(m) => m,
        }
    }
}
