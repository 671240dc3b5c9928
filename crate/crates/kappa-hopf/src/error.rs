use thiserror::Error;

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("series error: {0}")]
    Series(#[from] series_core::SeriesError),

    #[error("operator error: {0}")]
    Weyl(#[from] weyl_engine::WeylError),

    /// A product escaped the rotation/boost-linear span the tensor type can
    /// represent. Products with at most one Lorentz letter per term stay
    /// inside; two letters on the same term do not.
    #[error("product leaves the Lorentz-linear span: {0}")]
    LorentzQuadratic(String),

    /// A deformed-spacetime record is missing one of its required blocks.
    #[error("incomplete realization record: missing {0}")]
    IncompleteRecord(&'static str),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, HopfError>;
