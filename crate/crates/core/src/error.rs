//! Error types shared across the simulation core.

use alloc::string::String;
use core::fmt;

/// A configuration value failed validation.
///
/// `key` names the offending field in config-file path notation
/// (e.g. `classes.slow.k`) so front ends can point at the exact line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config: {}: {}", self.key, self.message)
    }
}

impl core::error::Error for ConfigError {}

/// A runtime failure inside a simulation step.
#[derive(Debug, Clone, PartialEq)]
pub enum SimError {
    /// Arithmetic produced NaN or infinity; the run state is corrupt.
    NonFinite { context: &'static str },
    /// The configuration was rejected before stepping.
    Config(ConfigError),
    /// Initial placement could not satisfy the separation constraint.
    Placement { attempts: u32 },
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::NonFinite { context } => {
                write!(f, "non-finite value in {context}: state is corrupted")
            }
            SimError::Config(e) => e.fmt(f),
            SimError::Placement { attempts } => write!(
                f,
                "target placement failed after {attempts} attempts; arena too small for the separation constraint"
            ),
        }
    }
}

impl core::error::Error for SimError {}

impl From<ConfigError> for SimError {
    fn from(e: ConfigError) -> Self {
        SimError::Config(e)
    }
}
