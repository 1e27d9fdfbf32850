//! Error taxonomy shared by the whole crate.

use num_complex::Complex64;
use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps these onto its exit-code contract: parameter errors exit
/// with 2, pole errors with 3, everything else is a plain failure (1).
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Invalid input (domain violation, malformed index, bad flag value).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// An argument fell within the pole-proximity threshold of the lattice.
    #[error("pole error: {context} (distance {distance:.3e} to lattice point {m} + {k}*tau)")]
    Pole {
        /// Integer coordinates of the nearest lattice point m + k*tau.
        m: i64,
        k: i64,
        /// Distance from the offending argument to that lattice point.
        distance: f64,
        context: String,
    },

    /// A series did not converge within the term budget.
    #[error("precision error: series budget of {max_terms} terms exhausted ({context})")]
    Precision { max_terms: usize, context: String },

    /// A linear problem was too ill-conditioned to trust.
    #[error("degeneracy error: {context} (condition estimate {condition:.3e})")]
    Degenerate { condition: f64, context: String },

    /// Generic numerical failure (singular matrix, invalid value).
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Mutually exclusive verification candidates all failed.
    #[error("selection error: {0}")]
    Selection(String),
}

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn pole(m: i64, k: i64, distance: f64, context: impl Into<String>) -> Self {
        Error::Pole {
            m,
            k,
            distance,
            context: context.into(),
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Complex scalar used everywhere in this crate.
pub type C64 = Complex64;

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<Error>();
}
