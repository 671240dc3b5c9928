//! Exact normal-ordered operator algebra over truncated deformation series.
//!
//! This crate provides the operator layer the deformation machinery is built
//! on: elements of the position/momentum algebra (and its tensor powers) with
//! Gaussian-rational coefficients, reduced to normal order in closed form
//! from the single relation `[p_mu, x^nu] = -i delta^nu_mu`. On top of it sit
//! the standard realizations of the inhomogeneous gl(4) generators and the
//! deformed coordinate realizations (two one-parameter families, the general
//! two-function family, and the boost-covariant assembly).
//!
//! Arithmetic is exact: coefficients are rational complex numbers and all
//! series are truncated at an explicit order in the deformation parameter,
//! so every stated identity can be checked order by order with zero residual.

mod element;
mod error;
mod generators;
mod metric;
mod realize;

pub use element::{NormalOrdered, WeylElement};
pub use error::{Result, WeylError};
pub use generators::{igl_realize, p_spatial_squared, p_squared, Generator};
pub use metric::{epsilon3, MetricSig};
pub use realize::{
    natural_realization, realize_coordinates, realize_noncovariant, satisfies_constraint,
    CoordFamily, HermiticityConvention, NaturalRealization, NoncovariantRealization, Side,
};
