use thiserror::Error;

/// Errors raised by parameter validation and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GupError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("Z(-, {ell}) needs a negative power of a vanishing difference; use the regrouped monomial form")]
    DegenerateNegativePower { ell: i64 },

    #[error("series operation undefined: {0}")]
    SeriesDomain(&'static str),

    #[error("grid too coarse: weighted trace of the kernel is {trace} (expected 1 within {tolerance:e})")]
    InsufficientResolution { trace: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, GupError>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> GupError {
    GupError::InvalidParameter {
        name,
        value,
        reason,
    }
}
