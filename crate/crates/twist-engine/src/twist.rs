//! Construction and verification of the two-leg deformation elements.
//!
//! A [`Twist`] packages `F` and its inverse at a fixed truncation order,
//! together with the family data needed to expand either tensor slot by the
//! undeformed coproduct. All checks work inside the operator representation
//! on position/momentum words; that representation identifies some formally
//! distinct products of symmetry generators, so passing residuals certify the
//! identities as operator statements (which is what every downstream
//! computation consumes).

use series_core::Scalar;
use weyl_engine::{igl_realize, Generator, MetricSig, NormalOrdered};

use crate::error::{Result, TwistError};
use crate::family::{ExpandLeg, TwistFamily};

/// A two-leg invertible deformation element together with its family data.
#[derive(Debug, Clone)]
pub struct Twist {
    family: TwistFamily,
    h_order: u32,
    metric: MetricSig,
    f: NormalOrdered,
    f_inv: NormalOrdered,
}

impl Twist {
    /// Build the twist of the given family at truncation order `h_order`.
    ///
    /// For the constant-matrix family the order bounds the total momentum
    /// degree retained instead of a deformation power (there is none); the
    /// deformed products rebuild the inverse at whatever degree an exact
    /// answer needs, so the stored cap only affects the element reported
    /// here.
    pub fn build(family: TwistFamily, h_order: u32, metric: &MetricSig) -> Result<Self> {
        family.validate()?;
        let (f, f_inv) = if let Some((a, b)) = family.coboundary_exponents(h_order, metric)? {
            let f = a.exp()?.normal_product(&b.exp()?)?;
            let f_inv = b.neg().exp()?.normal_product(&a.neg().exp()?)?;
            (f, f_inv)
        } else {
            let mut t = family
                .f_exponent(h_order, metric)?
                .expect("single-exponential family");
            if family.uses_degree_cap() {
                t = t.with_deg_cap(Some(h_order));
            }
            (t.exp()?, t.neg().exp()?)
        };
        Ok(Twist { family, h_order, metric: metric.clone(), f, f_inv })
    }

    pub fn family(&self) -> &TwistFamily {
        &self.family
    }

    pub fn h_order(&self) -> u32 {
        self.h_order
    }

    pub fn metric(&self) -> &MetricSig {
        &self.metric
    }

    pub fn f(&self) -> &NormalOrdered {
        &self.f
    }

    pub fn f_inv(&self) -> &NormalOrdered {
        &self.f_inv
    }

    /// Replace the stored element, keeping the family data. This exists for
    /// corruption drills: the two-cocycle residual is computed against the
    /// family's structural expansion, so a twist whose element has been
    /// tampered with produces a nonzero residual.
    pub fn with_replaced_f(mut self, f: NormalOrdered) -> Self {
        self.f = f;
        self
    }

    /// `F F^{-1} - 1 (x) 1`, which must vanish identically.
    pub fn unit_residual(&self) -> Result<NormalOrdered> {
        let one = NormalOrdered::one(2, self.h_order, &self.metric);
        Ok(self.f.normal_product(&self.f_inv)?.sub(&one)?)
    }

    /// Counit normalization `(eps (x) id) F - 1` and `(id (x) eps) F - 1`.
    pub fn normalization_residuals(&self) -> Result<(NormalOrdered, NormalOrdered)> {
        let one = NormalOrdered::one(1, self.h_order, &self.metric);
        let left = self.f.counit_leg(0)?.sub(&one)?;
        let right = self.f.counit_leg(1)?.sub(&one)?;
        Ok((left, right))
    }

    /// The two-cocycle residual
    /// `F_{12} · (d0 (x) id) F  -  F_{23} · (id (x) d0) F` as a three-leg
    /// element. The coproduct-expanded factors are assembled structurally
    /// from the family (the coproduct is a homomorphism, so it passes through
    /// exponentials exponent-wise); the outer factors use the stored element,
    /// which is how tampering becomes visible.
    pub fn cocycle_residual(&self) -> Result<NormalOrdered> {
        let f12 = self.f.insert_unit_leg(2)?;
        let f23 = self.f.insert_unit_leg(0)?;
        let dl = self.expanded_f(ExpandLeg::First)?;
        let dr = self.expanded_f(ExpandLeg::Second)?;
        let lhs = f12.normal_product(&dl)?;
        let rhs = f23.normal_product(&dr)?;
        Ok(lhs.sub(&rhs)?)
    }

    /// `(d0 (x) id) F` or `(id (x) d0) F` as a three-leg element.
    fn expanded_f(&self, leg: ExpandLeg) -> Result<NormalOrdered> {
        if let Some((a, b)) =
            self.family.coboundary_exponents_expanded(self.h_order, &self.metric, leg)?
        {
            return Ok(a.exp()?.normal_product(&b.exp()?)?);
        }
        let mut t = self
            .family
            .f_exponent_expanded(self.h_order, &self.metric, leg)?
            .expect("single-exponential family");
        if self.family.uses_degree_cap() {
            t = t.with_deg_cap(Some(self.h_order));
        }
        Ok(t.exp()?)
    }

    /// Conjugation `F y F^{-1}` computed through the terminating adjoint
    /// series of the exponent(s).
    pub(crate) fn conjugate(&self, y: &NormalOrdered) -> Result<NormalOrdered> {
        if let Some((a, b)) = self.family.coboundary_exponents(self.h_order, &self.metric)? {
            let inner = conj_by_exp(&b, y)?;
            return conj_by_exp(&a, &inner);
        }
        let mut t = self
            .family
            .f_exponent(self.h_order, &self.metric)?
            .expect("single-exponential family");
        if self.family.uses_degree_cap() {
            t = t.with_deg_cap(Some(self.h_order));
        }
        conj_by_exp(&t, y)
    }

    /// Deformed coproduct of a symmetry generator:
    /// `F (g (x) 1 + 1 (x) g) F^{-1}`.
    pub fn twisted_coproduct(&self, g: Generator) -> Result<NormalOrdered> {
        let el = igl_realize(g, self.h_order, &self.metric)?;
        let d0 = crate::family::primitive_spread(&el, 2)?;
        self.conjugate(&d0)
    }

    /// Deformed coproduct of an element that is linear in the symmetry
    /// generators (a combination of `1`, `P_mu` and `x^mu p_nu` words, with
    /// arbitrary deformation powers). Extends [`Self::twisted_coproduct`] by
    /// linearity; anything nonlinear is rejected.
    pub fn twisted_coproduct_of(&self, el: &NormalOrdered) -> Result<NormalOrdered> {
        if el.legs() != 1 {
            return Err(TwistError::Invalid("expected a single-leg element".into()));
        }
        let w = self.h_order;
        let mut acc = NormalOrdered::zero(2, w, &self.metric);
        for (key, c) in el.iter_terms() {
            let h = key[0] as u32;
            let (xs, ps) = NormalOrdered::key_leg(key, 0);
            let xdeg: u16 = xs.iter().sum();
            let pdeg: u16 = ps.iter().sum();
            let base = if xdeg == 0 && pdeg == 0 {
                NormalOrdered::one(2, w, &self.metric)
            } else if xdeg == 0 && pdeg == 1 {
                let mu = (0..4).find(|&m| ps[m] == 1).expect("degree one");
                self.twisted_coproduct(Generator::P(mu))?
            } else if xdeg == 1 && pdeg == 1 {
                let mu = (0..4).find(|&m| xs[m] == 1).expect("degree one");
                let nu = (0..4).find(|&m| ps[m] == 1).expect("degree one");
                self.twisted_coproduct(Generator::L(mu, nu))?
            } else {
                return Err(TwistError::Invalid(
                    "element is not linear in the symmetry generators".into(),
                ));
            };
            acc = acc.add(&base.scalar_mul(c).mul_h(h).truncate_to(w))?;
        }
        Ok(acc)
    }

    /// The antipode conjugator `u_F = sum f^a S(f_a)` in its per-family
    /// closed form.
    pub fn antipode_conjugator(&self) -> Result<NormalOrdered> {
        self.family.antipode_conjugator(self.h_order, &self.metric)
    }

    /// Deformed antipode of a symmetry generator:
    /// `S^F(g) = u_F (-g) u_F^{-1}`.
    pub fn twisted_antipode(&self, g: Generator) -> Result<NormalOrdered> {
        let el = igl_realize(g, self.h_order, &self.metric)?;
        let u = self.antipode_conjugator()?;
        let ui = u.invert()?;
        Ok(u.normal_product(&el.neg())?.normal_product(&ui)?)
    }

    /// Deformed antipode of a position-free element: the undeformed antipode
    /// reverses each momentum word in place (momenta commute) and flips the
    /// sign of every letter, then `u_F` conjugates.
    pub fn twisted_antipode_momentum(&self, el: &NormalOrdered) -> Result<NormalOrdered> {
        if el.legs() != 1 {
            return Err(TwistError::Invalid("expected a single-leg element".into()));
        }
        let w = self.h_order;
        let mut flipped = NormalOrdered::zero(1, w, &self.metric);
        for (key, c) in el.iter_terms() {
            let h = key[0] as u32;
            let (xs, ps) = NormalOrdered::key_leg(key, 0);
            if xs.iter().any(|&e| e != 0) {
                return Err(TwistError::Invalid("element is not position-free".into()));
            }
            let pdeg: u16 = ps.iter().sum();
            let sign = if pdeg % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            let mono = NormalOrdered::monomial(h, xs, ps, &sign * c, w, &self.metric);
            flipped = flipped.add(&mono)?;
        }
        let u = self.antipode_conjugator()?;
        let ui = u.invert()?;
        Ok(u.normal_product(&flipped)?.normal_product(&ui)?)
    }

    /// The quasi-triangular element `R = F_{21} F^{-1}`.
    pub fn universal_r(&self) -> Result<NormalOrdered> {
        Ok(self.f.swap_legs()?.normal_product(&self.f_inv)?)
    }

    /// Quantum Yang-Baxter residual
    /// `R_{12} R_{13} R_{23} - R_{23} R_{13} R_{12}` as a three-leg element.
    pub fn qybe_residual(&self) -> Result<NormalOrdered> {
        let r = self.universal_r()?;
        let r12 = r.insert_unit_leg(2)?;
        let r13 = r.insert_unit_leg(1)?;
        let r23 = r.insert_unit_leg(0)?;
        let lhs = r12.normal_product(&r13)?.normal_product(&r23)?;
        let rhs = r23.normal_product(&r13)?.normal_product(&r12)?;
        Ok(lhs.sub(&rhs)?)
    }
}

/// `exp(t) y exp(-t)` through the adjoint series `sum ad_t^k(y) / k!`, which
/// terminates for graded-nilpotent `t`.
pub(crate) fn conj_by_exp(t: &NormalOrdered, y: &NormalOrdered) -> Result<NormalOrdered> {
    let bound = t.h_order() + t.deg_cap().unwrap_or(0) + 4;
    let mut acc = y.clone();
    let mut term = y.clone();
    for k in 1..=bound {
        term = t.commutator(&term)?.scalar_mul(&Scalar::rational(1, k as i64));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&term)?;
    }
    if t.commutator(&term)?.is_zero() {
        Ok(acc)
    } else {
        Err(TwistError::Invalid("adjoint series does not terminate".into()))
    }
}
