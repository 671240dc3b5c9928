//! Standard operator realizations of the inhomogeneous gl(4) generators.
//!
//! The building blocks are `L^mu_nu = x^mu p_nu` and translations
//! `P_mu = p_mu`. Physical combinations follow by lowering indices with the
//! stored metric:
//!
//! ```text
//!   M_{mu nu} = x_mu p_nu - x_nu p_mu        (Lorentz)
//!   M_i = epsilon_{ijk} x_j p_k              (rotations, spatial lowered)
//!   N_i = M_{0i}                             (boosts)
//!   D = x^k p_k                              (spatial dilation, k = 1..3)
//! ```
//!
//! All realizations are exact (no truncation effects: the images are finite
//! polynomials), but each element still carries a truncation order so it can
//! enter deformed computations.

use series_core::Scalar;

use crate::element::NormalOrdered;
use crate::error::{Result, WeylError};
use crate::metric::{epsilon3, MetricSig};

/// Labels for the symmetry generators the engine can realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Translation `P_mu`, `mu` in `0..=3`.
    P(usize),
    /// `gl(4)` basis element `L^mu_nu`, both indices in `0..=3`.
    L(usize, usize),
    /// Lorentz generator `M_{mu nu}` with both indices lowered.
    M(usize, usize),
    /// Rotation `M_i = epsilon_{ijk} x_j p_k`, `i` in `1..=3`.
    Rot(usize),
    /// Boost `N_i = M_{0i}`, `i` in `1..=3`.
    Boost(usize),
    /// Spatial dilation `D = x^k p_k` summed over `k = 1..3`.
    D,
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::P(mu) => write!(f, "P{mu}"),
            Generator::L(mu, nu) => write!(f, "L{mu}_{nu}"),
            Generator::M(mu, nu) => write!(f, "M{mu}{nu}"),
            Generator::Rot(i) => write!(f, "M{i}"),
            Generator::Boost(i) => write!(f, "N{i}"),
            Generator::D => write!(f, "D"),
        }
    }
}

fn check_idx(mu: usize) -> Result<()> {
    if mu > 3 {
        return Err(WeylError::UnknownGenerator(format!("index {mu} out of range 0..=3")));
    }
    Ok(())
}

fn check_spatial(i: usize) -> Result<()> {
    if !(1..=3).contains(&i) {
        return Err(WeylError::UnknownGenerator(format!("spatial index {i} out of range 1..=3")));
    }
    Ok(())
}

/// `x^mu p_nu` as a normal-ordered element (already in normal order).
fn l_elem(mu: usize, nu: usize, h_order: u32, metric: &MetricSig) -> NormalOrdered {
    let mut xs = [0u16; 4];
    let mut ps = [0u16; 4];
    xs[mu] = 1;
    ps[nu] = 1;
    NormalOrdered::monomial(0, xs, ps, Scalar::one(), h_order, metric)
}

/// Realize a symmetry generator as a normal-ordered operator.
pub fn igl_realize(gen: Generator, h_order: u32, metric: &MetricSig) -> Result<NormalOrdered> {
    match gen {
        Generator::P(mu) => {
            check_idx(mu)?;
            Ok(NormalOrdered::p(mu, h_order, metric))
        }
        Generator::L(mu, nu) => {
            check_idx(mu)?;
            check_idx(nu)?;
            Ok(l_elem(mu, nu, h_order, metric))
        }
        Generator::M(mu, nu) => {
            check_idx(mu)?;
            check_idx(nu)?;
            // M_{mu nu} = eta_{mu mu} L^mu_nu - eta_{nu nu} L^nu_mu
            let a = l_elem(mu, nu, h_order, metric)
                .scalar_mul(&Scalar::from_int(metric.eta(mu) as i64));
            let b = l_elem(nu, mu, h_order, metric)
                .scalar_mul(&Scalar::from_int(metric.eta(nu) as i64));
            a.sub(&b)
        }
        Generator::Rot(i) => {
            check_spatial(i)?;
            let mut acc = NormalOrdered::zero(1, h_order, metric);
            for j in 1..=3 {
                for k in 1..=3 {
                    let sign = epsilon3(i, j, k);
                    if sign == 0 {
                        continue;
                    }
                    // x_j = eta_{jj} x^j
                    let coeff = Scalar::from_int(sign * metric.eta(j) as i64);
                    acc = acc.add(&l_elem(j, k, h_order, metric).scalar_mul(&coeff))?;
                }
            }
            Ok(acc)
        }
        Generator::Boost(i) => {
            check_spatial(i)?;
            igl_realize(Generator::M(0, i), h_order, metric)
        }
        Generator::D => {
            let mut acc = NormalOrdered::zero(1, h_order, metric);
            for k in 1..=3 {
                acc = acc.add(&l_elem(k, k, h_order, metric))?;
            }
            Ok(acc)
        }
    }
}

/// `p^2 = eta^{mu nu} p_mu p_nu` (diagonal metric: the inverse has the same
/// signs).
pub fn p_squared(h_order: u32, metric: &MetricSig) -> NormalOrdered {
    let mut acc = NormalOrdered::zero(1, h_order, metric);
    for mu in 0..4 {
        let mut ps = [0u16; 4];
        ps[mu] = 2;
        let c = Scalar::from_int(metric.eta(mu) as i64);
        let term = NormalOrdered::monomial(0, [0; 4], ps, c, h_order, metric);
        acc = acc.add(&term).expect("same shape");
    }
    acc
}

/// Spatial momentum square `p_1^2 + p_2^2 + p_3^2` (metric-independent).
pub fn p_spatial_squared(h_order: u32, metric: &MetricSig) -> NormalOrdered {
    let mut acc = NormalOrdered::zero(1, h_order, metric);
    for k in 1..=3 {
        let mut ps = [0u16; 4];
        ps[k] = 2;
        let term = NormalOrdered::monomial(0, [0; 4], ps, Scalar::one(), h_order, metric);
        acc = acc.add(&term).expect("same shape");
    }
    acc
}
