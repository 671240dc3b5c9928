use thiserror::Error;

/// Errors surfaced by twist construction and the deformed-product machinery.
#[derive(Debug, Error)]
pub enum TwistError {
    /// A family parameter outside its admissible range (e.g. the projective
    /// family at parameter zero).
    #[error("invalid twist parameter: {0}")]
    InvalidParam(String),

    /// The constant bidifferential matrix must be antisymmetric.
    #[error("matrix is not antisymmetric: {0}")]
    NotAntisymmetric(String),

    /// Structure constants supplied to the bracket calculus fail the Jacobi
    /// identity.
    #[error("Jacobi identity violated: {0}")]
    Jacobi(String),

    /// A basis symbol not present in the bracket table.
    #[error("unknown basis symbol: {0}")]
    UnknownSymbol(String),

    /// An operand with the wrong shape for the requested operation.
    #[error("invalid operand: {0}")]
    Invalid(String),

    #[error(transparent)]
    Weyl(#[from] weyl_engine::WeylError),

    #[error(transparent)]
    Series(#[from] series_core::SeriesError),
}

pub type Result<T> = std::result::Result<T, TwistError>;
