//! Twist families and the structural data each one carries.
//!
//! Every deformation here is an invertible two-leg element `F` built from
//! symmetry generators. Three families arrive as a single exponential
//! `F = exp(T)`; the fourth is a coboundary `(W^{-1} (x) W^{-1}) d0(W)`
//! manufactured from a group-like conjugator `W = exp(u)`. The family knows
//! how to produce `T` (or the coboundary's two exponents), how to extend each
//! exponent by the undeformed coproduct on either tensor slot — which is what
//! the two-cocycle check consumes — and the closed form of the antipode
//! conjugator `sum f^a S(f_a)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use series_core::Scalar;
use weyl_engine::{igl_realize, Generator, MetricSig, NormalOrdered};

use crate::error::{Result, TwistError};

/// Which tensor slot of a two-leg exponent the undeformed coproduct expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ExpandLeg {
    First,
    Second,
}

/// Exponent of the group-like conjugator for the coboundary family:
/// `u = coeff · h^{h_pow} · D^{dilation_pow} · P_0^{p0_pow}`.
///
/// The two letters commute, so the word order is immaterial. The deformation
/// power must be positive for the exponentials to terminate.
#[derive(Debug, Clone, PartialEq)]
pub struct CoboundaryWord {
    pub coeff: Scalar,
    pub h_pow: u32,
    pub dilation_pow: u32,
    pub p0_pow: u32,
}

impl CoboundaryWord {
    /// Convenience: `u = h D`, whose conjugator twist is the identity.
    pub fn h_dilation() -> Self {
        CoboundaryWord { coeff: Scalar::one(), h_pow: 1, dilation_pow: 1, p0_pow: 0 }
    }

    /// Convenience: `u = c · i · h D P_0`, the word that connects two members
    /// of the exponential-shift family.
    pub fn ih_dilation_p0(c: &BigRational) -> Self {
        CoboundaryWord {
            coeff: &Scalar::i() * &rat_scalar(c),
            h_pow: 1,
            dilation_pow: 1,
            p0_pow: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.h_pow == 0 {
            return Err(TwistError::InvalidParam(
                "coboundary word needs a positive deformation power".into(),
            ));
        }
        Ok(())
    }

    /// Parity of the word under the undeformed antipode: `S(u) = ± u`.
    fn antipode_sign(&self) -> i64 {
        if (self.dilation_pow + self.p0_pow) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// The supported twist families.
#[derive(Debug, Clone, PartialEq)]
pub enum TwistFamily {
    /// `F = exp[i h (s P_0 (x) D - (1-s) D (x) P_0)]`; both exponent letters
    /// commute. Any rational `s` is admissible.
    Abelian { s: BigRational },
    /// `F = exp(J_r (x) sigma_r)` with `J_r = i (D/r - L^0_0)` and
    /// `sigma_r = ln(1 - h r P_0)`; singular at `r = 0`.
    Jordanian { r: BigRational },
    /// `F = exp[(i/2) theta^{mu nu} P_mu (x) P_nu]` with a constant
    /// antisymmetric rational matrix. Carries no deformation power; truncation
    /// is by total momentum degree instead.
    Theta { theta: Box<[[BigRational; 4]; 4]> },
    /// `F = exp(-(u (x) 1 + 1 (x) u)) · exp(d0(u))` for `W = exp(u)` — the
    /// coboundary of a group-like element. Gauge-trivial by construction.
    Coboundary { word: CoboundaryWord },
}

impl TwistFamily {
    pub fn name(&self) -> &'static str {
        match self {
            TwistFamily::Abelian { .. } => "abelian",
            TwistFamily::Jordanian { .. } => "jordanian",
            TwistFamily::Theta { .. } => "theta",
            TwistFamily::Coboundary { .. } => "trivial-coboundary",
        }
    }

    /// Human-readable parameter, for reports.
    pub fn param_label(&self) -> String {
        match self {
            TwistFamily::Abelian { s } => format!("s={s}"),
            TwistFamily::Jordanian { r } => format!("r={r}"),
            TwistFamily::Theta { theta } => {
                let mut entries = Vec::new();
                for mu in 0..4 {
                    for nu in (mu + 1)..4 {
                        if !theta[mu][nu].is_zero() {
                            entries.push(format!("theta{mu}{nu}={}", theta[mu][nu]));
                        }
                    }
                }
                if entries.is_empty() {
                    "theta=0".into()
                } else {
                    entries.join(",")
                }
            }
            TwistFamily::Coboundary { word } => format!(
                "u={}*h^{}*D^{}*P0^{}",
                word.coeff, word.h_pow, word.dilation_pow, word.p0_pow
            ),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self {
            TwistFamily::Abelian { .. } => Ok(()),
            TwistFamily::Jordanian { r } => {
                if r.is_zero() {
                    Err(TwistError::InvalidParam(
                        "projective family parameter must be nonzero".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            TwistFamily::Theta { theta } => {
                for mu in 0..4 {
                    for nu in 0..4 {
                        if theta[mu][nu] != -theta[nu][mu].clone() {
                            return Err(TwistError::NotAntisymmetric(format!(
                                "entries ({mu},{nu}) and ({nu},{mu})"
                            )));
                        }
                    }
                }
                Ok(())
            }
            TwistFamily::Coboundary { word } => word.validate(),
        }
    }

    /// Whether truncation runs over momentum degree rather than the
    /// deformation power.
    pub(crate) fn uses_degree_cap(&self) -> bool {
        matches!(self, TwistFamily::Theta { .. })
    }
}

// ----- building blocks ------------------------------------------------------

pub(crate) fn rat_scalar(r: &BigRational) -> Scalar {
    Scalar::from_rational(r.clone())
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

/// `ln(1 + a)` for a graded-nilpotent `a`, by the terminating Mercator series.
pub(crate) fn log1p_el(a: &NormalOrdered) -> Result<NormalOrdered> {
    let bound = a.h_order() + a.deg_cap().unwrap_or(0) + 1;
    let mut acc = NormalOrdered::zero(a.legs(), a.h_order(), a.metric()).with_deg_cap(a.deg_cap());
    let mut pw = NormalOrdered::one(a.legs(), a.h_order(), a.metric()).with_deg_cap(a.deg_cap());
    for m in 1..=bound {
        pw = pw.normal_product(a)?;
        if pw.is_zero() {
            return Ok(acc);
        }
        let sign = if m % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&pw.scalar_mul(&Scalar::rational(sign, m as i64)))?;
    }
    if pw.normal_product(a)?.is_zero() {
        Ok(acc)
    } else {
        Err(TwistError::Invalid("logarithm argument is not graded-nilpotent".into()))
    }
}

/// Multiply by one power of the deformation parameter without changing the
/// stated truncation order.
fn times_h(el: &NormalOrdered) -> NormalOrdered {
    let w = el.h_order();
    el.mul_h(1).truncate_to(w)
}

fn one_leg(w: u32, metric: &MetricSig) -> NormalOrdered {
    NormalOrdered::one(1, w, metric)
}

/// `sigma_r = ln(1 - h r P_0)` as a single-leg element.
fn sigma_r(r: &BigRational, w: u32, metric: &MetricSig) -> Result<NormalOrdered> {
    let mut ps = [0u16; 4];
    ps[0] = 1;
    let arg = NormalOrdered::monomial(1, [0; 4], ps, rat_scalar(&-r.clone()), w, metric);
    log1p_el(&arg)
}

/// `sigma_r` spread over several tensor slots: `ln(1 - h r (P_0 (x) 1 + ...))`.
fn sigma_r_spread(r: &BigRational, legs: u8, w: u32, metric: &MetricSig) -> Result<NormalOrdered> {
    let mut ps = [0u16; 4];
    ps[0] = 1;
    let single = NormalOrdered::monomial(1, [0; 4], ps, rat_scalar(&-r.clone()), w, metric);
    log1p_el(&primitive_spread(&single, legs)?)
}

/// `J_r = i (D / r - L^0_0)`.
fn j_r(r: &BigRational, w: u32, metric: &MetricSig) -> Result<NormalOrdered> {
    let d = igl_realize(Generator::D, w, metric)?;
    let l00 = igl_realize(Generator::L(0, 0), w, metric)?;
    let scaled = d.scalar_mul(&(&Scalar::i() * &rat_scalar(&r.recip())));
    Ok(scaled.add(&l00.scalar_mul(&Scalar::minus_i()))?)
}

/// Places `el` (single-leg) at slot `slot` of a `legs`-slot tensor, padding
/// the rest with identities.
fn at_slot(el: &NormalOrdered, slot: usize, legs: u8) -> Result<NormalOrdered> {
    let mut out = el.clone();
    for pos in 0..legs as usize {
        if pos < slot {
            out = out.insert_unit_leg(0)?;
        } else if pos > slot {
            out = out.insert_unit_leg(pos)?;
        }
    }
    Ok(out)
}

/// Primitive spread of a single-leg element over `legs` slots:
/// `g (x) 1 ... + ... (x) g`.
pub(crate) fn primitive_spread(el: &NormalOrdered, legs: u8) -> Result<NormalOrdered> {
    let mut acc = NormalOrdered::zero(legs, el.h_order(), el.metric());
    for slot in 0..legs as usize {
        acc = acc.add(&at_slot(el, slot, legs)?)?;
    }
    Ok(acc)
}

impl TwistFamily {
    /// The exponent `T` with `F = exp(T)`, for the single-exponential
    /// families. `None` for the coboundary family, which is a product of two
    /// exponentials instead.
    pub(crate) fn f_exponent(&self, w: u32, metric: &MetricSig) -> Result<Option<NormalOrdered>> {
        match self {
            TwistFamily::Abelian { s } => {
                let p0 = NormalOrdered::p(0, w, metric);
                let d = igl_realize(Generator::D, w, metric)?;
                let one_minus_s = BigRational::one() - s;
                let a = p0.tensor(&d)?.scalar_mul(&(&Scalar::i() * &rat_scalar(s)));
                let b = d.tensor(&p0)?.scalar_mul(&(&Scalar::minus_i() * &rat_scalar(&one_minus_s)));
                Ok(Some(times_h(&a.add(&b)?)))
            }
            TwistFamily::Jordanian { r } => {
                let t = j_r(r, w, metric)?.tensor(&sigma_r(r, w, metric)?)?;
                Ok(Some(t))
            }
            TwistFamily::Theta { theta } => {
                let mut acc = NormalOrdered::zero(2, w, metric);
                for mu in 0..4 {
                    for nu in 0..4 {
                        if theta[mu][nu].is_zero() {
                            continue;
                        }
                        let c = &Scalar::i() * &rat_scalar(&(theta[mu][nu].clone() * half()));
                        let term = NormalOrdered::p(mu, w, metric)
                            .tensor(&NormalOrdered::p(nu, w, metric))?
                            .scalar_mul(&c);
                        acc = acc.add(&term)?;
                    }
                }
                Ok(Some(acc))
            }
            TwistFamily::Coboundary { .. } => Ok(None),
        }
    }

    /// `T` with one slot expanded by the undeformed coproduct — the exponent
    /// of `(d0 (x) id) F` or `(id (x) d0) F`. `None` for the coboundary
    /// family.
    pub(crate) fn f_exponent_expanded(
        &self,
        w: u32,
        metric: &MetricSig,
        leg: ExpandLeg,
    ) -> Result<Option<NormalOrdered>> {
        match self {
            TwistFamily::Abelian { s } => {
                let p0 = NormalOrdered::p(0, w, metric);
                let d = igl_realize(Generator::D, w, metric)?;
                let one_minus_s = BigRational::one() - s;
                let build = |a: &NormalOrdered, b: &NormalOrdered| -> Result<NormalOrdered> {
                    // a (x) b with the requested slot spread primitively
                    let spread = match leg {
                        ExpandLeg::First => {
                            let a2 = primitive_spread(a, 2)?;
                            a2.tensor(b)?
                        }
                        ExpandLeg::Second => {
                            let b2 = primitive_spread(b, 2)?;
                            a.tensor(&b2)?
                        }
                    };
                    Ok(spread)
                };
                let ta = build(&p0, &d)?.scalar_mul(&(&Scalar::i() * &rat_scalar(s)));
                let tb =
                    build(&d, &p0)?.scalar_mul(&(&Scalar::minus_i() * &rat_scalar(&one_minus_s)));
                Ok(Some(times_h(&ta.add(&tb)?)))
            }
            TwistFamily::Jordanian { r } => {
                let j = j_r(r, w, metric)?;
                let t = match leg {
                    ExpandLeg::First => {
                        // J_r is primitive
                        primitive_spread(&j, 2)?.tensor(&sigma_r(r, w, metric)?)?
                    }
                    ExpandLeg::Second => {
                        // sigma_r is a logarithm of a group-like combination:
                        // d0(sigma_r) = ln(1 - h r (P_0 (x) 1 + 1 (x) P_0))
                        j.tensor(&sigma_r_spread(r, 2, w, metric)?)?
                    }
                };
                Ok(Some(t))
            }
            TwistFamily::Theta { theta } => {
                let mut acc = NormalOrdered::zero(3, w, metric);
                for mu in 0..4 {
                    for nu in 0..4 {
                        if theta[mu][nu].is_zero() {
                            continue;
                        }
                        let c = &Scalar::i() * &rat_scalar(&(theta[mu][nu].clone() * half()));
                        let pmu = NormalOrdered::p(mu, w, metric);
                        let pnu = NormalOrdered::p(nu, w, metric);
                        let term = match leg {
                            ExpandLeg::First => primitive_spread(&pmu, 2)?.tensor(&pnu)?,
                            ExpandLeg::Second => pmu.tensor(&primitive_spread(&pnu, 2)?)?,
                        };
                        acc = acc.add(&term.scalar_mul(&c))?;
                    }
                }
                Ok(Some(acc))
            }
            TwistFamily::Coboundary { .. } => Ok(None),
        }
    }

    /// The coboundary family's two exponents `(A, B)` with
    /// `F = exp(A) exp(B)`: `A = -(u (x) 1 + 1 (x) u)` and `B = d0(u)`,
    /// the coproduct of the word taken letter by letter.
    pub(crate) fn coboundary_exponents(
        &self,
        w: u32,
        metric: &MetricSig,
    ) -> Result<Option<(NormalOrdered, NormalOrdered)>> {
        let TwistFamily::Coboundary { word } = self else {
            return Ok(None);
        };
        let u = coboundary_u(word, w, metric)?;
        let a = primitive_spread(&u, 2)?.neg();
        let b = coboundary_delta_u(word, 2, w, metric)?;
        Ok(Some((a, b)))
    }

    /// The coboundary exponents with one slot expanded by the undeformed
    /// coproduct, as three-leg elements.
    pub(crate) fn coboundary_exponents_expanded(
        &self,
        w: u32,
        metric: &MetricSig,
        leg: ExpandLeg,
    ) -> Result<Option<(NormalOrdered, NormalOrdered)>> {
        let TwistFamily::Coboundary { word } = self else {
            return Ok(None);
        };
        let u = coboundary_u(word, w, metric)?;
        let du = coboundary_delta_u(word, 2, w, metric)?;
        // A = -(u (x) 1 + 1 (x) u): expanding either slot primitively gives
        // d0(u) on that side and the untouched letter on the other.
        let a = match leg {
            ExpandLeg::First => du.insert_unit_leg(2)?.add(&at_slot(&u, 2, 3)?)?.neg(),
            ExpandLeg::Second => at_slot(&u, 0, 3)?.add(&du.insert_unit_leg(0)?)?.neg(),
        };
        // B = d0(u) extends to the same three-slot primitive spread from
        // either side (coassociativity of the primitive coproduct).
        let b = coboundary_delta_u(word, 3, w, metric)?;
        Ok(Some((a, b)))
    }

    /// Antipode conjugator `u_F = sum f^a S(f_a)` in closed form.
    pub(crate) fn antipode_conjugator(
        &self,
        w: u32,
        metric: &MetricSig,
    ) -> Result<NormalOrdered> {
        match self {
            TwistFamily::Abelian { s } => {
                // exp(i (1 - 2s) h D P_0)
                let c = BigRational::one() - s - s;
                let d = igl_realize(Generator::D, w, metric)?;
                let p0 = NormalOrdered::p(0, w, metric);
                let arg = times_h(&d.normal_product(&p0)?.scalar_mul(&(&Scalar::i() * &rat_scalar(&c))));
                Ok(arg.exp()?)
            }
            TwistFamily::Jordanian { r } => {
                // sum_m J_r^m sigma-bar^m / m!  with sigma-bar = ln(1 + h r P_0);
                // the two letters do not commute, so this is not a plain
                // exponential.
                let j = j_r(r, w, metric)?;
                let mut ps = [0u16; 4];
                ps[0] = 1;
                let arg = NormalOrdered::monomial(1, [0; 4], ps, rat_scalar(r), w, metric);
                let sbar = log1p_el(&arg)?;
                let mut acc = one_leg(w, metric);
                let mut jm = one_leg(w, metric);
                let mut sm = one_leg(w, metric);
                let mut fact = Scalar::one();
                for m in 1..=w {
                    jm = jm.normal_product(&j)?;
                    sm = sm.normal_product(&sbar)?;
                    fact = &fact * &Scalar::rational(1, m as i64);
                    if sm.is_zero() {
                        break;
                    }
                    acc = acc.add(&jm.normal_product(&sm)?.scalar_mul(&fact))?;
                }
                Ok(acc)
            }
            TwistFamily::Theta { .. } => Ok(one_leg(w, metric)),
            TwistFamily::Coboundary { word } => {
                // u_F = W^{-1} S(W^{-1}) = exp(-u - S(u)); the word is an
                // antipode eigenvector, so this is exp(0) or exp(-2u).
                if word.antipode_sign() < 0 {
                    Ok(one_leg(w, metric))
                } else {
                    let u = coboundary_u(word, w, metric)?;
                    Ok(u.scalar_mul(&Scalar::from_int(-2)).exp()?)
                }
            }
        }
    }
}

/// The coboundary word realized as a single-leg element.
fn coboundary_u(word: &CoboundaryWord, w: u32, metric: &MetricSig) -> Result<NormalOrdered> {
    let d = igl_realize(Generator::D, w, metric)?;
    let p0 = NormalOrdered::p(0, w, metric);
    let mut u = one_leg(w, metric).scalar_mul(&word.coeff);
    u = u.normal_product(&d.pow(word.dilation_pow)?)?;
    u = u.normal_product(&p0.pow(word.p0_pow)?)?;
    u = u.mul_h(word.h_pow).truncate_to(w);
    Ok(u)
}

/// The word's undeformed coproduct spread over `legs` slots, letter by
/// letter: each letter is primitive, the word multiplies them.
fn coboundary_delta_u(
    word: &CoboundaryWord,
    legs: u8,
    w: u32,
    metric: &MetricSig,
) -> Result<NormalOrdered> {
    let d = igl_realize(Generator::D, w, metric)?;
    let p0 = NormalOrdered::p(0, w, metric);
    let mut u = NormalOrdered::one(legs, w, metric).scalar_mul(&word.coeff);
    let dspread = primitive_spread(&d, legs)?;
    let pspread = primitive_spread(&p0, legs)?;
    u = u.normal_product(&dspread.pow(word.dilation_pow)?)?;
    u = u.normal_product(&pspread.pow(word.p0_pow)?)?;
    u = u.mul_h(word.h_pow).truncate_to(w);
    Ok(u)
}
