use alloc::string::String;

/// Errors raised by grid construction, synthesis and analysis.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A constructor or parameter set violated one of its invariants.
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    /// A value outside the mathematical domain of an operation (e.g. negative power).
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix dimensions do not match the sampling grid or each other.
    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    Shape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    /// A generated path would alias in Doppler at the configured snapshot rate.
    #[error(
        "path '{path}' reaches a Doppler shift of {doppler_hz:.1} Hz, at or above the \
         unambiguous limit of {limit_hz:.1} Hz"
    )]
    Aliasing {
        path: String,
        doppler_hz: f64,
        limit_hz: f64,
    },

    /// Not enough data for the requested operation.
    #[error("insufficient data: {0}")]
    Insufficient(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }
}
