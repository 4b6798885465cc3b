use std::fmt;

use gifc_core::Error;

use crate::config::Command;

pub mod exit {
    pub const GENERIC: u8 = 1;
    /// Reserved for command-line usage errors reported by the argument parser.
    pub const USAGE: u8 = 2;
    pub const UNKNOWN_SCHEME: u8 = 3;
    pub const INVALID_POLYNOMIAL: u8 = 4;
    pub const MISSING_SEED: u8 = 5;
    pub const INVALID_CONFIG: u8 = 6;
    /// Quadrature disagreement, size guard, or a failed lemma check.
    pub const CHECK_FAILED: u8 = 7;
    pub const IO: u8 = 8;
}

/// A diagnostic plus the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn invalid_config(message: impl Into<String>) -> Self {
        Self::new(exit::INVALID_CONFIG, message)
    }

    pub fn missing_seed(command: Command) -> Self {
        Self::new(
            exit::MISSING_SEED,
            format!(
                "{command} needs a seed (seed = ... in the config, {} or --seed)",
                crate::config::SEED_ENV
            ),
        )
    }

    pub fn io(context: &str, err: std::io::Error) -> Self {
        Self::new(exit::IO, format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::UnknownScheme(_) => exit::UNKNOWN_SCHEME,
            Error::EmptyGenerator
            | Error::ZeroPolynomial(_)
            | Error::InvalidPolynomial(_)
            | Error::MemoryTooLarge { .. } => exit::INVALID_POLYNOMIAL,
            Error::QuadratureDisagreement { .. }
            | Error::SizeGuard(_)
            | Error::TooManySections { .. } => exit::CHECK_FAILED,
            Error::InvalidChannel(_)
            | Error::InvalidEstimation(_)
            | Error::InvalidChannelTable(_)
            | Error::InvalidExperiment(_)
            | Error::ZeroBitsPerSection
            | Error::InvalidCorner { .. }
            | Error::EmptyRegion => exit::INVALID_CONFIG,
            _ => exit::GENERIC,
        };
        Self::new(code, err.to_string())
    }
}
