use thiserror::Error;
use toda_core::evolve::EvolveError;
use toda_core::identity::{FError, IdentityError};

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    /// A theorem-mandated check failed, including an inexact division.
    pub const CHECK_FAILED: i32 = 1;
    /// Singular or degenerate initial data.
    pub const SINGULAR: i32 = 2;
    pub const CONFIG: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Evolve(#[from] EvolveError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => exit::CONFIG,
            CliError::Evolve(e) => evolve_exit_code(e),
        }
    }
}

pub fn evolve_exit_code(e: &EvolveError) -> i32 {
    match e {
        EvolveError::NotLaurent { .. } => exit::CHECK_FAILED,
        EvolveError::Singular { .. } | EvolveError::Degenerate => exit::SINGULAR,
        EvolveError::Config(_) => exit::CONFIG,
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<FError> for CliError {
    fn from(e: FError) -> Self {
        CliError::Config(e.to_string())
    }
}
