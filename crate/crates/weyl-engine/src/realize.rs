//! Deformed coordinate realizations.
//!
//! All constructions express noncommutative coordinates as elements
//! `x^mu · (momentum series)` of the undeformed operator algebra, so that the
//! deformed commutation relations hold exactly, order by order in the
//! deformation parameter. Three builders are provided:
//!
//! * [`realize_coordinates`]: the two one-parameter coordinate families
//!   (momentum-shift and projective), left- and right-acting variants;
//! * [`realize_noncovariant`]: the general two-function family driven by
//!   series data `psi`, `gamma`, including momenta, rotations, boosts, and the
//!   deformed Casimir;
//! * [`natural_realization`]: the fixed boost-covariant assembly whose
//!   momenta stay undeformed.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use series_core::{Scalar, TruncSeries, VarSet};

use crate::element::NormalOrdered;
use crate::error::{Result, WeylError};
use crate::generators::igl_realize;
use crate::metric::MetricSig;

/// The two one-parameter coordinate families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordFamily {
    /// Exponential momentum-shift family; parameter `s` is unrestricted.
    Abelian,
    /// Projective family; parameter `r` must be nonzero.
    Jordanian,
}

/// Left- or right-acting coordinate operators. Left operators satisfy
/// `[xh^0, xh^k] = i h xh^k`; right operators satisfy the sign-flipped
/// relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn rat_scalar(r: &BigRational) -> Scalar {
    Scalar::from_rational(r.clone())
}

fn pvars() -> Arc<VarSet> {
    VarSet::standard(&["p0", "p1", "p2", "p3"], None).expect("fixed momentum alphabet")
}

const PBIND: [(&str, usize); 4] = [("p0", 0), ("p1", 1), ("p2", 2), ("p3", 3)];

/// `x^mu` as an element.
fn x_el(mu: usize, h_order: u32, metric: &MetricSig) -> NormalOrdered {
    NormalOrdered::x(mu, h_order, metric)
}

/// `c * h * x^k p_k` summed over spatial `k` (already normal-ordered).
fn h_dilation(c: &Scalar, h_order: u32, metric: &MetricSig) -> NormalOrdered {
    let mut acc = NormalOrdered::zero(1, h_order, metric);
    for k in 1..=3 {
        let mut xs = [0u16; 4];
        let mut ps = [0u16; 4];
        xs[k] = 1;
        ps[k] = 1;
        let term = NormalOrdered::monomial(1, xs, ps, c.clone(), h_order, metric);
        acc = acc.add(&term).expect("same shape");
    }
    acc
}

/// `exp(c * h * p_0)` as an element.
fn exp_h_p0(c: &Scalar, h_order: u32, metric: &MetricSig) -> Result<NormalOrdered> {
    let mut ps = [0u16; 4];
    ps[0] = 1;
    NormalOrdered::monomial(1, [0; 4], ps, c.clone(), h_order, metric).exp()
}

/// `1 - r h p_0` as an element.
fn one_minus_rhp0(r: &BigRational, h_order: u32, metric: &MetricSig) -> NormalOrdered {
    let one = NormalOrdered::one(1, h_order, metric);
    let mut ps = [0u16; 4];
    ps[0] = 1;
    let shift = NormalOrdered::monomial(1, [0; 4], ps, rat_scalar(&-r.clone()), h_order, metric);
    one.add(&shift).expect("same shape")
}

/// Deformed coordinates `[xh^0, xh^1, xh^2, xh^3]` for the requested family,
/// parameter, and side.
///
/// The projective family is singular at parameter zero (the fractional power
/// `(1 - h r p_0)^{-1/r}` degenerates), which is reported as an error.
pub fn realize_coordinates(
    family: CoordFamily,
    param: &BigRational,
    side: Side,
    h_order: u32,
    metric: &MetricSig,
) -> Result<[NormalOrdered; 4]> {
    match family {
        CoordFamily::Abelian => {
            let s = param;
            let (exp_coeff, dil_coeff) = match side {
                // xh^i = x^i exp((1-s) h p0),  xh^0 = x^0 - s h x^k p_k
                Side::Left => (
                    rat_scalar(&(BigRational::one() - s)),
                    rat_scalar(&-s.clone()),
                ),
                // xh^i = x^i exp(-s h p0),  xh^0 = x^0 + (1-s) h x^k p_k
                Side::Right => (
                    rat_scalar(&-s.clone()),
                    rat_scalar(&(BigRational::one() - s)),
                ),
            };
            let shift = exp_h_p0(&exp_coeff, h_order, metric)?;
            let x0 = x_el(0, h_order, metric).add(&h_dilation(&dil_coeff, h_order, metric))?;
            let mut out = [x0.clone(), x0.clone(), x0.clone(), x0];
            for i in 1..=3 {
                out[i] = x_el(i, h_order, metric).normal_product(&shift)?;
            }
            Ok(out)
        }
        CoordFamily::Jordanian => {
            let r = param;
            if r.is_zero() {
                return Err(WeylError::SingularParam(
                    "projective family requires a nonzero parameter".into(),
                ));
            }
            match side {
                Side::Left => {
                    // xh^i = x^i (1 - h r p0)^{-1/r},  xh^0 = x^0 (1 - h r p0)
                    let pv = pvars();
                    let base = TruncSeries::one(&pv, h_order).sub(
                        &TruncSeries::monomial(
                            &pv,
                            h_order,
                            1,
                            &[("p0", 1)],
                            rat_scalar(r),
                        )?,
                    )?;
                    let beta = -BigRational::one() / r;
                    let g = base.pow_fractional(&beta)?;
                    let g_el = NormalOrdered::from_momentum_series(&g, &PBIND, metric)?;
                    let lin = one_minus_rhp0(r, h_order, metric);
                    let x0 = x_el(0, h_order, metric).normal_product(&lin)?;
                    let mut out = [x0.clone(), x0.clone(), x0.clone(), x0];
                    for i in 1..=3 {
                        out[i] = x_el(i, h_order, metric).normal_product(&g_el)?;
                    }
                    Ok(out)
                }
                Side::Right => {
                    // xh^i = x^i,  xh^0 = x^0 (1 - r h p0) + h x^k p_k
                    let lin = one_minus_rhp0(r, h_order, metric);
                    let x0 = x_el(0, h_order, metric)
                        .normal_product(&lin)?
                        .add(&h_dilation(&Scalar::one(), h_order, metric))?;
                    let mut out = [x0.clone(), x0.clone(), x0.clone(), x0];
                    for i in 1..=3 {
                        out[i] = x_el(i, h_order, metric);
                    }
                    Ok(out)
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// General two-function realization
// ---------------------------------------------------------------------------

/// Output of [`realize_noncovariant`]: deformed coordinates, momenta,
/// rotations, boosts, and the deformed Casimir, plus the auxiliary momentum
/// series used to assemble them.
#[derive(Debug, Clone)]
pub struct NoncovariantRealization {
    /// Deformed coordinates `X^0..X^3` (upper indices).
    pub x: [NormalOrdered; 4],
    /// Deformed momentum generators `P_0..P_3` (lower indices).
    pub p: [NormalOrdered; 4],
    /// Rotations `M_1..M_3` (undeformed).
    pub rot: [NormalOrdered; 3],
    /// Boosts `N_1..N_3`.
    pub boost: [NormalOrdered; 3],
    /// Deformed Casimir, normalized so its classical limit is
    /// `p_0^2 - |p|^2` in the `(-,+,+,+)` convention.
    pub casimir: NormalOrdered,
    /// `psi(-h p_0)` as a momentum series.
    pub psi_tilde: TruncSeries,
    /// `gamma(-h p_0)` as a momentum series.
    pub gamma_tilde: TruncSeries,
    /// `exp(integral of dt/psi)` evaluated at `t = -h p_0`.
    pub big_psi_tilde: TruncSeries,
    /// `exp(integral of gamma dt/psi)` evaluated at `t = -h p_0`.
    pub big_gamma_tilde: TruncSeries,
}

/// Evaluate the four auxiliary series of the two-function family at
/// `t = -h p_0`, each over the full momentum alphabet at order `w`.
fn auxiliary_series(
    psi: &[BigRational],
    gamma: &[BigRational],
    w: u32,
) -> Result<(TruncSeries, TruncSeries, TruncSeries, TruncSeries)> {
    if psi.first().map(|c| !c.is_one()).unwrap_or(true) {
        return Err(WeylError::Invalid(
            "psi must be a series with constant term exactly 1".into(),
        ));
    }
    let tv = VarSet::standard(&["t"], None).expect("one symbol");
    let build = |coeffs: &[BigRational]| -> Result<TruncSeries> {
        let mut acc = TruncSeries::zero(&tv, w).with_deg_cap(Some(w));
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = TruncSeries::monomial(&tv, w, 0, &[("t", k as i32)], rat_scalar(c))?;
            acc = acc.add(&mono)?;
        }
        Ok(acc)
    };
    let psi_t = build(psi)?;
    let gamma_t = build(gamma)?;
    let inv_psi = psi_t.invert()?;
    let big_psi_t = inv_psi.antiderivative("t")?.exp()?;
    let big_gamma_t = gamma_t.mul(&inv_psi)?.antiderivative("t")?.exp()?;

    // t = -h p_0
    let pv = pvars();
    let binder = TruncSeries::monomial(&pv, w, 1, &[("p0", 1)], Scalar::from_int(-1))?;
    let sub = |s: &TruncSeries| -> Result<TruncSeries> {
        Ok(s.substitute(&[("t", &binder)])?.with_deg_cap(None))
    };
    Ok((sub(&psi_t)?, sub(&gamma_t)?, sub(&big_psi_t)?, sub(&big_gamma_t)?))
}

/// Build the general two-function realization from the Taylor coefficients of
/// `psi` (constant term must be `1`) and `gamma` at the given truncation
/// order. Internally works two orders higher so the divided differences
/// `(Psi^{-1} - Psi)/h` and `(Psi^{-1} + Psi - 2)/h^2` come out exact.
pub fn realize_noncovariant(
    psi: &[BigRational],
    gamma: &[BigRational],
    h_order: u32,
    metric: &MetricSig,
) -> Result<NoncovariantRealization> {
    let w = h_order + 2;
    let (psi_tilde, gamma_tilde, big_psi, big_gamma) = auxiliary_series(psi, gamma, w)?;

    let big_psi_inv = big_psi.invert()?;
    let big_gamma_inv = big_gamma.invert()?;

    let pv = pvars();
    let p_sp_sq = {
        // |p|^2 = p_1^2 + p_2^2 + p_3^2 as a series
        let mut acc = TruncSeries::zero(&pv, w);
        for name in ["p1", "p2", "p3"] {
            let v = TruncSeries::var(&pv, w, name)?;
            acc = acc.add(&v.mul(&v)?)?;
        }
        acc
    };
    let h1 = TruncSeries::h(&pv, w);
    let half = Scalar::rational(1, 2);

    let to_el = |s: &TruncSeries| NormalOrdered::from_momentum_series(s, &PBIND, metric);

    // Coordinates.
    let coord_factor = big_gamma.mul(&big_psi_inv)?;
    let coord_factor_el = to_el(&coord_factor)?;
    let mut x = [
        NormalOrdered::zero(1, w, metric),
        NormalOrdered::zero(1, w, metric),
        NormalOrdered::zero(1, w, metric),
        NormalOrdered::zero(1, w, metric),
    ];
    for i in 1..=3 {
        x[i] = x_el(i, w, metric).normal_product(&coord_factor_el)?;
    }
    x[0] = x_el(0, w, metric)
        .normal_product(&to_el(&psi_tilde)?)?
        .add(&h_dilation(&Scalar::from_int(-1), w, metric).normal_product(&to_el(&gamma_tilde)?)?)?;

    // Momenta.
    let mut p = [
        NormalOrdered::zero(1, w, metric),
        NormalOrdered::zero(1, w, metric),
        NormalOrdered::zero(1, w, metric),
        NormalOrdered::zero(1, w, metric),
    ];
    for i in 1..=3 {
        let pi = TruncSeries::var(&pv, w, PBIND[i].0)?;
        p[i] = to_el(&pi.mul(&big_gamma_inv)?)?;
    }
    // P_0 = (Psi^{-1} - Psi)/(2h) + (h/2) |p|^2 Psi Gamma^{-2}
    let p0_sing = big_psi_inv.sub(&big_psi)?.div_h(1)?.scalar_mul(&half);
    let p0_reg = h1
        .mul(&p_sp_sq)?
        .mul(&big_psi)?
        .mul(&big_gamma_inv)?
        .mul(&big_gamma_inv)?
        .scalar_mul(&half)
        .truncate_to(w - 1)?;
    p[0] = to_el(&p0_sing.add(&p0_reg)?)?;

    // Rotations (exact, undeformed).
    let rot = [
        igl_realize(crate::generators::Generator::Rot(1), w, metric)?,
        igl_realize(crate::generators::Generator::Rot(2), w, metric)?,
        igl_realize(crate::generators::Generator::Rot(3), w, metric)?,
    ];

    // Boosts, assembled term by term at order w-1.
    let t_a = big_gamma
        .mul(&big_psi_inv.sub(&big_psi)?)?
        .div_h(1)?
        .scalar_mul(&half);
    let t_b = psi_tilde
        .mul(&big_psi)?
        .mul(&big_gamma_inv)?
        .truncate_to(w - 1)?;
    let t_c = h1
        .mul(&p_sp_sq)?
        .mul(&big_psi)?
        .mul(&big_gamma_inv)?
        .scalar_mul(&half)
        .truncate_to(w - 1)?;
    let t_d = h1
        .mul(&gamma_tilde)?
        .mul(&big_psi)?
        .mul(&big_gamma_inv)?
        .truncate_to(w - 1)?;
    let (a_el, b_el, c_el, d_el) = (to_el(&t_a)?, to_el(&t_b)?, to_el(&t_c)?, to_el(&t_d)?);
    let w1 = w - 1;
    let mut boost = [
        NormalOrdered::zero(1, w1, metric),
        NormalOrdered::zero(1, w1, metric),
        NormalOrdered::zero(1, w1, metric),
    ];
    // The boost factorizes as N_i = -(X^i P_0 + X^0 P_i) BigPsi; expanding
    // through the auxiliary series gives the four explicit terms below. The
    // signs are fixed — at h = 0 they reproduce -x^0 p_i - x^i p_0, the
    // undeformed boost that closes the Lorentz sector.
    for i in 1..=3 {
        // - x^i Gamma (Psi^{-1} - Psi)/(2h)
        let term_a = x_el(i, w1, metric).neg().normal_product(&a_el)?;
        // - x^0 p_i psi Psi Gamma^{-1}
        let term_b = {
            let mut xs = [0u16; 4];
            let mut ps = [0u16; 4];
            xs[0] = 1;
            ps[i] = 1;
            NormalOrdered::monomial(0, xs, ps, Scalar::from_int(-1), w1, metric)
                .normal_product(&b_el)?
        };
        // - x^i (h/2) |p|^2 Psi Gamma^{-1}
        let term_c = x_el(i, w1, metric).neg().normal_product(&c_el)?;
        // + h x^k p_k p_i gamma Psi Gamma^{-1}
        let term_d = {
            let mut acc = NormalOrdered::zero(1, w1, metric);
            for k in 1..=3 {
                let mut xs = [0u16; 4];
                let mut ps = [0u16; 4];
                xs[k] = 1;
                ps[k] += 1;
                ps[i] += 1;
                let m = NormalOrdered::monomial(0, xs, ps, Scalar::from_int(1), w1, metric);
                acc = acc.add(&m)?;
            }
            acc.normal_product(&d_el)?
        };
        boost[i - 1] = term_a.add(&term_b)?.add(&term_c)?.add(&term_d)?;
    }

    // Casimir: (Psi^{-1} + Psi - 2)/h^2 - |p|^2 Psi Gamma^{-2}, order w-2.
    let two = TruncSeries::constant(&pv, w, Scalar::from_int(2));
    let cas_sing = big_psi_inv.add(&big_psi)?.sub(&two)?.div_h(2)?;
    let cas_reg = p_sp_sq
        .mul(&big_psi)?
        .mul(&big_gamma_inv)?
        .mul(&big_gamma_inv)?
        .truncate_to(w - 2)?;
    let casimir = to_el(&cas_sing.sub(&cas_reg)?)?;

    // Truncate everything to the requested order.
    let trunc = |e: &NormalOrdered| e.truncate_to(h_order);
    Ok(NoncovariantRealization {
        x: [trunc(&x[0]), trunc(&x[1]), trunc(&x[2]), trunc(&x[3])],
        p: [trunc(&p[0]), trunc(&p[1]), trunc(&p[2]), trunc(&p[3])],
        rot: [trunc(&rot[0]), trunc(&rot[1]), trunc(&rot[2])],
        boost: [trunc(&boost[0]), trunc(&boost[1]), trunc(&boost[2])],
        casimir: casimir.truncate_to(h_order),
        psi_tilde: psi_tilde.truncate_to(h_order)?,
        gamma_tilde: gamma_tilde.truncate_to(h_order)?,
        big_psi_tilde: big_psi.truncate_to(h_order)?,
        big_gamma_tilde: big_gamma.truncate_to(h_order)?,
    })
}

impl NoncovariantRealization {
    /// Defect of the deformed time coordinate under Hermitian transpose,
    /// `X^0' - X^0`. Vanishes exactly when the series data satisfy
    /// `psi' + 3 gamma = 0` (the linear constraint); the competing cube-root
    /// constraint `psi' = -gamma/3` does not make it vanish unless `gamma`
    /// is zero.
    pub fn time_transpose_defect(&self) -> Result<NormalOrdered> {
        self.x[0].transpose()?.sub(&self.x[0])
    }
}

/// The two Hermiticity constraints proposed for the two-function family; the
/// engine's transpose test singles out which one actually closes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HermiticityConvention {
    /// `psi' = -gamma/3`.
    CubeRoot,
    /// `psi' + 3 gamma = 0`.
    Linear,
}

/// Check a coefficient-level Hermiticity constraint: `psi'` is compared
/// against the multiple of `gamma` the convention dictates, degree by degree.
pub fn satisfies_constraint(
    psi: &[BigRational],
    gamma: &[BigRational],
    conv: HermiticityConvention,
) -> bool {
    let deg = psi.len().max(gamma.len() + 1);
    for k in 0..deg {
        // coefficient of t^k in psi' is (k+1) psi_{k+1}
        let dpsi = psi
            .get(k + 1)
            .map(|c| c * BigRational::from_integer((k as i64 + 1).into()))
            .unwrap_or_else(BigRational::zero);
        let g = gamma.get(k).cloned().unwrap_or_else(BigRational::zero);
        let rhs = match conv {
            HermiticityConvention::CubeRoot => -g / BigRational::from_integer(3.into()),
            HermiticityConvention::Linear => -BigRational::from_integer(3.into()) * g,
        };
        if dpsi != rhs {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Natural (boost-covariant) realization
// ---------------------------------------------------------------------------

/// Output of [`natural_realization`].
#[derive(Debug, Clone)]
pub struct NaturalRealization {
    /// Deformed coordinates `X^0..X^3`.
    pub x: [NormalOrdered; 4],
    /// Momenta (undeformed `p_mu`).
    pub p: [NormalOrdered; 4],
    /// Deformed Casimir `2 (sqrt(1 + h^2 (p_0^2 - |p|^2)) - 1)/h^2`; its
    /// classical limit is the dispersion combination `p_0^2 - |p|^2`.
    pub casimir: NormalOrdered,
}

/// The fixed assembly `X^mu = x^mu (h p_0 + sqrt(1 + h^2 (p_0^2 - |p|^2)))
/// - h x^0 p^mu` with undeformed momenta and Lorentz generators.
///
/// Signs are fixed by exact closure of the deformed coordinate relations: the
/// square root carries the dispersion combination `p_0^2 - |p|^2`, and the
/// correction term raises the index with the same combination's signature,
/// i.e. `p^0 = p_0`, `p^j = -p_j`. Equivalently `X^0 = x^0 sqrt(...)` and
/// `X^j = x^j (h p_0 + sqrt(...)) + h x^0 p_j`. The deformed Casimir
/// `2 (sqrt(1 + h^2 (p_0^2 - |p|^2)) - 1)/h^2` then satisfies
/// `[C_h, X_mu] = 2i P_mu` exactly (time index lowered with `(-,+,+,+)`).
pub fn natural_realization(h_order: u32, metric: &MetricSig) -> Result<NaturalRealization> {
    let w = h_order + 2;
    let pv = pvars();

    // Dispersion combination p_0^2 - |p|^2 (explicit signs; the stored metric
    // does not enter these closed forms).
    let p0 = TruncSeries::var(&pv, w, "p0")?;
    let mut disp = p0.mul(&p0)?;
    for name in ["p1", "p2", "p3"] {
        let v = TruncSeries::var(&pv, w, name)?;
        disp = disp.sub(&v.mul(&v)?)?;
    }
    let h1 = TruncSeries::h(&pv, w);
    let h2disp = h1.mul(&h1)?.mul(&disp)?;

    // root = sqrt(1 + h^2 (p_0^2 - |p|^2)),  A = h p_0 + root
    let root = TruncSeries::one(&pv, w)
        .add(&h2disp)?
        .pow_fractional(&BigRational::new(1.into(), 2.into()))?;
    let a = root.add(&h1.mul(&p0)?)?;
    let a_el = NormalOrdered::from_momentum_series(&a, &PBIND, metric)?;

    let mut x = [
        NormalOrdered::zero(1, w, metric),
        NormalOrdered::zero(1, w, metric),
        NormalOrdered::zero(1, w, metric),
        NormalOrdered::zero(1, w, metric),
    ];
    for mu in 0..4 {
        // - h x^0 p^mu with p^0 = p_0, p^j = -p_j
        let raise = if mu == 0 { -1i64 } else { 1i64 };
        let mut xs = [0u16; 4];
        let mut ps = [0u16; 4];
        xs[0] = 1;
        ps[mu] = 1;
        let corr = NormalOrdered::monomial(1, xs, ps, Scalar::from_int(raise), w, metric);
        x[mu] = x_el(mu, w, metric).normal_product(&a_el)?.add(&corr)?;
    }

    // Casimir: 2 (root - 1)/h^2.
    let cas = root
        .sub(&TruncSeries::one(&pv, w))?
        .div_h(2)?
        .scalar_mul(&Scalar::from_int(2));
    let casimir = NormalOrdered::from_momentum_series(&cas, &PBIND, metric)?;

    let p = [
        NormalOrdered::p(0, h_order, metric),
        NormalOrdered::p(1, h_order, metric),
        NormalOrdered::p(2, h_order, metric),
        NormalOrdered::p(3, h_order, metric),
    ];
    Ok(NaturalRealization {
        x: [
            x[0].truncate_to(h_order),
            x[1].truncate_to(h_order),
            x[2].truncate_to(h_order),
            x[3].truncate_to(h_order),
        ],
        p,
        casimir: casimir.truncate_to(h_order),
    })
}
