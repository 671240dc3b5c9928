//! Drinfeld twists over the inhomogeneous scaling algebra, the deformed
//! products they induce on position polynomials, and the classical bracket
//! calculus for their leading antisymmetric parts.
//!
//! The crate provides four twist families — two graded by the deformation
//! parameter (an exponential-shift family and a projective family), one
//! constant-matrix family graded by momentum degree, and gauge-trivial
//! coboundaries of group-like elements. For each it can:
//!
//! * verify invertibility, counit normalization, and the two-cocycle
//!   identity, returning exact residuals;
//! * compute deformed products of position polynomials and the coordinate
//!   operators they induce (left- and right-acting);
//! * conjugate the undeformed coproduct and antipode into their deformed
//!   forms, generator by generator;
//! * form the quasi-triangular element `R = F_21 F^{-1}` and its Yang-Baxter
//!   residual;
//! * evaluate Schouten brackets of classical bivectors over a supplied table
//!   of structure constants.
//!
//! Everything is exact: coefficients are complex rationals, truncation is by
//! the deformation power (or momentum degree for the constant-matrix family),
//! and every "check" returns a residual that is identically zero exactly when
//! the identity holds at the stated order.

mod error;
mod family;
mod report;
mod schouten;
mod star;
mod twist;

pub use error::{Result, TwistError};
pub use family::{CoboundaryWord, TwistFamily};
pub use report::{verify_twist, CheckRow};
pub use schouten::{schouten_bracket, Bivector, LieTable, Trivector};
pub use star::{
    coordinate_realization, coordinate_relation_residuals, star_commutator,
    star_commutator_with_function, star_product,
};
pub use twist::Twist;
