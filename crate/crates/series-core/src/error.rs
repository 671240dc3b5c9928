use thiserror::Error;

/// Errors from series construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("argument is not nilpotent under the active truncation: {0}")]
    NotNilpotent(String),

    #[error("constant term must be exactly 1 ({0})")]
    ConstantNotOne(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("negative exponent on non-invertible symbol `{0}`")]
    NegativeExponent(String),

    #[error("binding for invertible symbol `{0}` must itself be invertible")]
    NonUnitBinding(String),

    #[error("cannot divide by h^{power}: a term has h-degree {found}")]
    HDivision { power: u32, found: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;
