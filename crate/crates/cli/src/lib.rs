//! Command implementations behind the `gupent` binary. Kept in a library so
//! the integration tests can drive them without spawning processes.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod figures;
pub mod report;
pub mod sweep;
pub mod table;
pub mod verify;

use gupent_core::GupError;

#[derive(Debug)]
pub enum CliError {
    Model(GupError),
    Invalid(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Invalid(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<GupError> for CliError {
    fn from(e: GupError) -> Self {
        CliError::Model(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// First-order truncation is considered strained once `α |c1/c0|` exceeds this.
pub const TRUNCATION_STRAIN: f64 = 0.1;

/// A warning line when `α |c1/c0| > 0.1`.
pub fn strain_warning(label: &str, c0: f64, c1: f64, alpha: f64) -> Option<String> {
    if c0 == 0.0 {
        return None;
    }
    let strain = alpha * (c1 / c0).abs();
    (strain > TRUNCATION_STRAIN).then(|| {
        format!("warning: {label}: alpha*|c1/c0| = {strain:.3} > {TRUNCATION_STRAIN}; first-order truncation is strained")
    })
}
