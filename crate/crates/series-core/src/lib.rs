//! Exact truncated power series in a central deformation parameter `h`.
//!
//! The scalar ring is the Gaussian rationals ℚ(ı) (see [`Scalar`]); series
//! live in `ℚ(ı)[vars][[h]] / (h^{N+1})` where `N` is the truncation order
//! and `vars` is a finite, explicitly declared alphabet of commuting symbols
//! (see [`VarSet`]). A term is a monomial `h^k · v1^{e1} · v2^{e2} · …` with
//! an exact coefficient; no floating point enters anywhere in this crate.
//!
//! Two refinements beyond plain polynomial data:
//!
//! * **Laurent symbols.** A variable may be marked invertible, in which case
//!   its exponent ranges over all of ℤ. The public data model uses at most
//!   one such symbol (conventionally `Pi0`, the group-like shift operator);
//!   tensor-product computations in downstream crates construct internal
//!   alphabets where several legs each carry their own copy.
//! * **Momentum-degree cap.** An optional cap on the *total* degree in the
//!   non-Laurent, non-`h` symbols. This makes the exponential and inverse of
//!   `h`-free elements terminate in rings that are graded by momentum degree
//!   rather than by `h` (Laurent exponents do not count toward the cap).
//!
//! Truncation-order convention: a series of order `N` represents its class
//! modulo `h^{N+1}`, i.e. terms with `h`-exponent `0..=N` are all exact.
//!
//! The `h`-adic ultra-norm `‖a‖ = 2^{−n(a)}` (with `n(a)` the lowest
//! `h`-exponent, `‖0‖ = 0`) is computed exactly — its values are dyadic and
//! representable in `f64` without rounding for every reachable order.

mod error;
mod json;
mod scalar;
mod series;
mod varset;

pub use error::{Result, SeriesError};
pub use scalar::Scalar;
pub use series::TruncSeries;
pub use varset::{Var, VarSet};

/// Truncation orders accepted from user-facing configuration.
///
/// Internal computations may run at a few orders above the configured value
/// (e.g. to divide by `h^2` without losing precision), so the engine itself
/// accepts any order; this range is the contract for *configuration* input.
pub const CONFIG_ORDER_RANGE: std::ops::RangeInclusive<u32> = 2..=16;

/// Default truncation order for user-facing configuration.
pub const DEFAULT_ORDER: u32 = 8;
