//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by parameter validation and numeric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar input violated its documented constraint.
    #[error("invalid parameter `{name}` = {value}: must satisfy {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// A sweep grid was empty.
    #[error("empty {0} grid")]
    EmptyGrid(&'static str),

    /// A sweep grid was not strictly increasing.
    #[error("{0} grid must be strictly increasing")]
    GridNotIncreasing(&'static str),

    /// The radar echo vanished, so no delay estimate exists.
    #[error("no radar echo to estimate: {0}")]
    NoEcho(&'static str),

    /// Fisher information must be positive to invert into a CRLB.
    #[error("nonpositive Fisher information: {0}")]
    NonPositiveInformation(f64),

    /// Pulse and interference vectors must agree in length.
    #[error("sample length mismatch: pulse has {pulse} samples, interference has {interference}")]
    LengthMismatch { pulse: usize, interference: usize },

    /// The requested delay falls outside the usable observation window.
    #[error("true delay {delay_s} s outside the observation window interior (|delay| <= {max_s} s)")]
    DelayOutsideWindow { delay_s: f64, max_s: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, constraint: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            constraint,
        }
    }
}

/// Reject non-finite or out-of-range scalars with a uniform error.
pub(crate) fn require(
    ok: bool,
    name: &'static str,
    value: f64,
    constraint: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, value, constraint))
    }
}
