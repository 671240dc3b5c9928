//! Error type shared by the operator algebra and the realization builders.

use thiserror::Error;

/// Errors raised by operator-algebra computations.
#[derive(Debug, Error)]
pub enum WeylError {
    /// Binary operation between elements carrying different metric signatures.
    #[error("metric mismatch: {0} vs {1}")]
    MetricMismatch(String, String),

    /// Binary operation between elements with different tensor-leg counts.
    #[error("tensor leg mismatch: {0} legs vs {1} legs")]
    LegMismatch(u8, u8),

    /// Operation restricted to a specific number of legs.
    #[error("operation requires {expected} tensor leg(s), element has {found}")]
    WrongLegCount { expected: u8, found: u8 },

    /// The action target must be a pure position polynomial.
    #[error("action target carries momentum factors: {0}")]
    NotPolynomial(String),

    /// A realization parameter value makes the construction singular.
    #[error("singular parameter: {0}")]
    SingularParam(String),

    /// Generator label outside the supported inhomogeneous gl(4) set.
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),

    /// Exponential of an element that is not graded-nilpotent.
    #[error("exponential does not terminate: {0}")]
    NotNilpotent(String),

    /// Inverse of an element whose leading part is not an invertible scalar.
    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    /// Series-level arithmetic failure propagated from the coefficient ring.
    #[error(transparent)]
    Series(#[from] series_core::SeriesError),

    /// Anything else: malformed input, index out of range, leading-coefficient
    /// violations in realization data.
    #[error("{0}")]
    Invalid(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, WeylError>;
