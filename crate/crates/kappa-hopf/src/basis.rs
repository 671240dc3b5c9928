//! Structure tables of the deformed relativistic symmetry algebra.
//!
//! Two presentations are built here.
//!
//! * **Classical basis** (`build_kappa_classical`): generators are the four
//!   momenta `p0..p3` plus rotations and boosts, with undeformed Lorentz-type
//!   brackets. All deformation sits in the coalgebra, expressed through the
//!   group-like shift
//!
//!   ```text
//!   Xi = h p0 + sqrt(1 + h^2 (p0^2 - p1^2 - p2^2 - p3^2))
//!   ```
//!
//!   as truncated power series in the formal deformation parameter `h`.
//!
//! * **Shift basis** (`build_kappa_qanalog`): the deformation scale is a
//!   positive rational `kappa`, the time direction enters only through an
//!   invertible symbol `Pi0` (and its inverse), and every structure map is an
//!   exact Laurent polynomial — no power-series truncation at all.
//!
//! Index conventions match the operator layer: the metric is mostly-plus,
//! spatial indices run `1..=3`, `eps_ijk` is the Levi-Civita symbol with
//! `eps_123 = +1`, and repeated spatial indices are summed.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed};
use series_core::{Scalar, TruncSeries, VarSet};
use weyl_engine::epsilon3;

use crate::error::{HopfError, Result};
use crate::lorentz::LorentzGen;
use crate::tensor::CovTensor;

/// Which presentation a [`HopfSpec`] carries.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisKind {
    /// Formal-deformation presentation over momenta `p0..p3`.
    Classical,
    /// Exact presentation over `P1..P3` and the invertible shift `Pi0`, at a
    /// fixed positive rational deformation scale.
    Shift { kappa: BigRational },
}

/// A generator of the algebra, for iteration in the axiom battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenLabel {
    Lorentz(LorentzGen),
    /// A base momentum symbol, by index into [`HopfSpec::base_vars`].
    Base(usize),
    /// The inverse of an invertible base symbol, by index.
    BaseInv(usize),
}

/// The complete Hopf-structure data of one presentation: coproducts,
/// antipodes, counits, and the adjoint action of rotations/boosts on the
/// momentum sector. Tensors built from this spec (see [`CovTensor`]) consult
/// these tables for every structural move.
#[derive(Debug, Clone)]
pub struct HopfSpec {
    kind: BasisKind,
    h_order: u32,
    deg_cap: Option<u32>,
    base: Vec<(String, bool)>,
    /// Joint alphabets for 1-, 2- and 3-leg tensors.
    alphabets: [Arc<VarSet>; 3],
    /// `[g, v]` as a one-leg series, keyed by letter and base index.
    /// Missing entries are zero.
    ad: BTreeMap<(LorentzGen, usize), TruncSeries>,
    /// Coproduct of each base symbol, a two-leg series.
    cop_base: Vec<TruncSeries>,
    /// Coproduct of each Lorentz letter, a two-leg tensor.
    cop_lorentz: BTreeMap<LorentzGen, CovTensor>,
    /// Antipode image of each base symbol, a one-leg series.
    s_base: Vec<TruncSeries>,
    /// Antipode image of each Lorentz letter, a one-leg tensor.
    s_lorentz: BTreeMap<LorentzGen, CovTensor>,
    /// The group-like shift and its inverse, as one-leg series.
    shift: TruncSeries,
    shift_inv: TruncSeries,
}

/// Per-leg name prefixes; one-leg tensors use bare names.
fn prefix(legs: u8, leg: u8) -> &'static str {
    if legs <= 1 {
        ""
    } else {
        ["a", "b", "c"][leg as usize]
    }
}

fn make_alphabets(base: &[(String, bool)]) -> Result<[Arc<VarSet>; 3]> {
    let mut out = Vec::with_capacity(3);
    for legs in 1..=3u8 {
        let mut names = Vec::new();
        for leg in 0..legs {
            for (name, laurent) in base {
                names.push((format!("{}{}", prefix(legs, leg), name), *laurent));
            }
        }
        out.push(VarSet::new(names)?);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

impl HopfSpec {
    pub fn kind(&self) -> &BasisKind {
        &self.kind
    }

    pub fn h_order(&self) -> u32 {
        self.h_order
    }

    pub fn deg_cap(&self) -> Option<u32> {
        self.deg_cap
    }

    /// Base symbols in canonical order, with their invertibility flags.
    pub fn base_vars(&self) -> &[(String, bool)] {
        &self.base
    }

    pub fn num_base(&self) -> usize {
        self.base.len()
    }

    pub fn joint_vars(&self, legs: u8) -> &Arc<VarSet> {
        &self.alphabets[(legs - 1) as usize]
    }

    /// The variable name of base symbol `idx` on `leg` of an n-leg tensor.
    pub fn leg_name(&self, legs: u8, leg: u8, idx: usize) -> String {
        format!("{}{}", prefix(legs, leg), self.base[idx].0)
    }

    /// Lifts a one-leg series (bare names) onto `leg` of an n-leg tensor.
    pub(crate) fn to_leg(&self, s: &TruncSeries, legs: u8, leg: u8) -> Result<TruncSeries> {
        if legs <= 1 {
            return Ok(s.align_to(self.joint_vars(1))?);
        }
        let pre = prefix(legs, leg);
        let pairs: Vec<(String, String)> = self
            .base
            .iter()
            .map(|(name, _)| (name.clone(), format!("{pre}{name}")))
            .collect();
        let borrowed: Vec<(&str, &str)> =
            pairs.iter().map(|(f, t)| (f.as_str(), t.as_str())).collect();
        Ok(s.rename(&borrowed)?.align_to(self.joint_vars(legs))?)
    }

    /// Re-addresses a stored two-leg series (prefixes `a`,`b`) onto legs
    /// `(la, lb)` of an n-leg tensor.
    pub(crate) fn two_leg_to(
        &self,
        s: &TruncSeries,
        legs: u8,
        la: u8,
        lb: u8,
    ) -> Result<TruncSeries> {
        let (pa, pb) = (prefix(legs, la), prefix(legs, lb));
        let mut pairs: Vec<(String, String)> = Vec::new();
        for (name, _) in &self.base {
            pairs.push((format!("a{name}"), format!("{pa}{name}")));
            pairs.push((format!("b{name}"), format!("{pb}{name}")));
        }
        let borrowed: Vec<(&str, &str)> =
            pairs.iter().map(|(f, t)| (f.as_str(), t.as_str())).collect();
        Ok(s.rename(&borrowed)?.align_to(self.joint_vars(legs))?)
    }

    pub(crate) fn ad_entry(&self, g: LorentzGen, idx: usize) -> Option<&TruncSeries> {
        self.ad.get(&(g, idx))
    }

    pub(crate) fn cop_of_base(&self, idx: usize) -> &TruncSeries {
        &self.cop_base[idx]
    }

    pub(crate) fn cop_of_lorentz(&self, g: LorentzGen) -> &CovTensor {
        &self.cop_lorentz[&g]
    }

    pub(crate) fn s_of_base(&self, idx: usize) -> &TruncSeries {
        &self.s_base[idx]
    }

    pub(crate) fn s_of_lorentz(&self, g: LorentzGen) -> &CovTensor {
        &self.s_lorentz[&g]
    }

    /// Counit value of base symbol `idx`: invertible symbols are group-like
    /// (counit 1), plain momenta are primitive-type (counit 0).
    pub(crate) fn counit_base(&self, idx: usize) -> Scalar {
        if self.base[idx].1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    /// The group-like shift as a one-leg series.
    pub fn shift_series(&self) -> &TruncSeries {
        &self.shift
    }

    pub fn shift_inverse(&self) -> &TruncSeries {
        &self.shift_inv
    }

    /// One-leg variable series of base symbol `idx`.
    pub fn base_series(&self, idx: usize) -> Result<TruncSeries> {
        let s = TruncSeries::var(self.joint_vars(1), self.h_order, &self.base[idx].0)?;
        Ok(s.with_deg_cap(self.deg_cap))
    }

    /// Applies the coproduct to a one-leg series by substituting each base
    /// symbol's coproduct (valid because the momentum sector is commutative,
    /// so substitution is an algebra map).
    pub fn cop_series(&self, s: &TruncSeries) -> Result<TruncSeries> {
        let bindings: Vec<(&str, &TruncSeries)> = self
            .base
            .iter()
            .enumerate()
            .map(|(i, (name, _))| (name.as_str(), &self.cop_base[i]))
            .collect();
        Ok(s.substitute(&bindings)?.align_to(self.joint_vars(2))?)
    }

    /// Applies the antipode to a one-leg series by substitution.
    pub fn antipode_series(&self, s: &TruncSeries) -> Result<TruncSeries> {
        let bindings: Vec<(&str, &TruncSeries)> = self
            .base
            .iter()
            .enumerate()
            .map(|(i, (name, _))| (name.as_str(), &self.s_base[i]))
            .collect();
        Ok(s.substitute(&bindings)?.align_to(self.joint_vars(1))?)
    }

    /// Applies the counit to a one-leg series: plain momenta to 0, invertible
    /// symbols to 1. Returns a series over the empty alphabet.
    pub fn counit_series(&self, s: &TruncSeries) -> Result<TruncSeries> {
        let values: Vec<(&str, Scalar)> = self
            .base
            .iter()
            .map(|(name, laurent)| {
                (name.as_str(), if *laurent { Scalar::one() } else { Scalar::zero() })
            })
            .collect();
        let borrowed: Vec<(&str, &Scalar)> = values.iter().map(|(n, v)| (*n, v)).collect();
        Ok(s.eval_vars(&borrowed)?)
    }

    /// All generators of this presentation.
    pub fn generator_labels(&self) -> Vec<GenLabel> {
        let mut out: Vec<GenLabel> = LorentzGen::all().into_iter().map(GenLabel::Lorentz).collect();
        for i in 0..self.base.len() {
            out.push(GenLabel::Base(i));
        }
        for (i, (_, laurent)) in self.base.iter().enumerate() {
            if *laurent {
                out.push(GenLabel::BaseInv(i));
            }
        }
        out
    }

    /// Human-readable generator name.
    pub fn label_name(&self, label: GenLabel) -> String {
        match label {
            GenLabel::Lorentz(g) => g.to_string(),
            GenLabel::Base(i) => self.base[i].0.clone(),
            GenLabel::BaseInv(i) => format!("{}^-1", self.base[i].0),
        }
    }

    /// The generator as a one-leg tensor.
    pub fn generator(&self, label: GenLabel) -> Result<CovTensor> {
        match label {
            GenLabel::Lorentz(g) => CovTensor::from_letter(self, 1, 0, g),
            GenLabel::Base(i) => CovTensor::from_series(self, 1, &self.base_series(i)?),
            GenLabel::BaseInv(i) => {
                if !self.base[i].1 {
                    return Err(HopfError::Invalid(format!(
                        "`{}` is not invertible",
                        self.base[i].0
                    )));
                }
                CovTensor::from_series(self, 1, &self.base_series(i)?.pow_int(-1)?)
            }
        }
    }

    /// Counit value of a generator.
    pub fn counit_of(&self, label: GenLabel) -> Scalar {
        match label {
            GenLabel::Lorentz(_) => Scalar::zero(),
            GenLabel::Base(i) => self.counit_base(i),
            GenLabel::BaseInv(_) => Scalar::one(),
        }
    }

    /// The quadratic invariant of the presentation.
    ///
    /// Classical basis: `C = 2 h^{-2} (sqrt(1 + h^2(p0^2 - pvec^2)) - 1)`,
    /// exact to two orders *less* than the spec (the `h^{-2}` costs them).
    /// Shift basis: `C = kappa^2 (Pi0 + Pi0^{-1} - 2) - Pvec^2 Pi0^{-1}`,
    /// exact.
    pub fn casimir(&self) -> Result<TruncSeries> {
        match &self.kind {
            BasisKind::Classical => {
                let p0 = self.base_series(0)?;
                let root = self.shift.sub(&times_h(&p0, 1)?)?;
                let one = TruncSeries::one(self.joint_vars(1), self.h_order);
                Ok(root.sub(&one)?.div_h(2)?.scalar_mul(&Scalar::from_int(2)))
            }
            BasisKind::Shift { kappa } => {
                let pi0 = self.base_series(3)?;
                let pi0_inv = pi0.pow_int(-1)?;
                let two = TruncSeries::constant(self.joint_vars(1), self.h_order, Scalar::from_int(2))
                    .with_deg_cap(self.deg_cap);
                let k2 = Scalar::from_rational(kappa * kappa);
                let disc = pi0.add(&pi0_inv)?.sub(&two)?.scalar_mul(&k2);
                Ok(disc.sub(&self.spatial_square()?.mul(&pi0_inv)?)?)
            }
        }
    }

    /// Sum of squared spatial momenta.
    pub fn spatial_square(&self) -> Result<TruncSeries> {
        let spatial: Vec<usize> = match self.kind {
            BasisKind::Classical => vec![1, 2, 3],
            BasisKind::Shift { .. } => vec![0, 1, 2],
        };
        let mut acc = TruncSeries::zero(self.joint_vars(1), self.h_order).with_deg_cap(self.deg_cap);
        for i in spatial {
            let v = self.base_series(i)?;
            acc = acc.add(&v.mul(&v)?)?;
        }
        Ok(acc)
    }

    /// Shift-basis energy: the distinguished series whose square minus the
    /// spatial square is the undeformed invariant,
    /// `E = (kappa/2) (Pi0 - Pi0^{-1}) + (1/(2 kappa)) Pvec^2 Pi0^{-1}`.
    pub fn shift_energy(&self) -> Result<TruncSeries> {
        let BasisKind::Shift { kappa } = &self.kind else {
            return Err(HopfError::Invalid(
                "shift_energy is defined in the shift basis only".into(),
            ));
        };
        let pi0 = self.base_series(3)?;
        let pi0_inv = pi0.pow_int(-1)?;
        let half_k = Scalar::from_rational(kappa / BigRational::from_integer(2.into()));
        let half_inv_k =
            Scalar::from_rational(BigRational::one() / (kappa * BigRational::from_integer(2.into())));
        let a = pi0.sub(&pi0_inv)?.scalar_mul(&half_k);
        let b = self.spatial_square()?.mul(&pi0_inv)?.scalar_mul(&half_inv_k);
        Ok(a.add(&b)?)
    }
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::Lorentz(g) => write!(f, "{g}"),
            GenLabel::Base(i) => write!(f, "base[{i}]"),
            GenLabel::BaseInv(i) => write!(f, "base[{i}]^-1"),
        }
    }
}

/// `h^k * s`, truncated back to the order of `s` (the raw `mul_h` raises the
/// order field, which would make later arithmetic with same-order series an
/// order mismatch).
pub(crate) fn times_h(s: &TruncSeries, k: u32) -> Result<TruncSeries> {
    Ok(s.mul_h(k).truncate_to(s.h_order())?)
}

/// The classical presentation at truncation order `h_order`.
///
/// Brackets: rotations and boosts close undeformed; `[N_j, p_k] = -i d_jk p0`,
/// `[N_j, p0] = -i p_j`, `[M_j, p_k] = i eps_jkl p_l`, momenta commute.
///
/// Coalgebra (with `Xi` the group-like shift):
///
/// ```text
/// cop(M_i) = M_i x 1 + 1 x M_i
/// cop(N_i) = N_i x 1 + Xi^{-1} x N_i - h eps_ijm p_j Xi^{-1} x M_m
/// cop(p_k) = p_k x Xi + 1 x p_k
/// cop(p0)  = p0 x Xi + Xi^{-1} x p0 + h p_m Xi^{-1} x p_m
/// S(M_i) = -M_i             S(N_i) = -Xi N_i - h eps_ijm p_j M_m
/// S(p_k) = -p_k Xi^{-1}     S(p0)  = -p0 + h pvec^2 Xi^{-1}
/// ```
///
/// Construction re-derives the group-like laws of `Xi` from these tables and
/// fails if they do not hold, so a spec that constructs is internally
/// consistent at its stated order.
pub fn build_kappa_classical(h_order: u32) -> Result<HopfSpec> {
    let base: Vec<(String, bool)> =
        (0..4).map(|mu| (format!("p{mu}"), false)).collect();
    let alphabets = make_alphabets(&base)?;
    let v1 = alphabets[0].clone();

    let p = |mu: usize| TruncSeries::var(&v1, h_order, &format!("p{mu}"));
    let p0 = p(0)?;
    let mut quad = p0.mul(&p0)?; // p0^2 - pvec^2
    let mut pvec2 = TruncSeries::zero(&v1, h_order);
    for j in 1..4 {
        let pj = p(j)?;
        let sq = pj.mul(&pj)?;
        quad = quad.sub(&sq)?;
        pvec2 = pvec2.add(&sq)?;
    }
    let one = TruncSeries::one(&v1, h_order);
    let root = one
        .add(&times_h(&quad, 2)?)?
        .pow_fractional(&BigRational::new(1.into(), 2.into()))?;
    let shift = times_h(&p0, 1)?.add(&root)?;
    let shift_inv = shift.invert()?;

    let i_s = Scalar::i();

    // Adjoint action of the Lorentz letters on the momentum sector.
    let mut ad = BTreeMap::new();
    for i in 1..=3u8 {
        for j in 1..=3usize {
            let mut entry = TruncSeries::zero(&v1, h_order);
            for l in 1..=3usize {
                let e = epsilon3(i as usize, j, l);
                if e != 0 {
                    entry = entry.add(&p(l)?.scalar_mul(&Scalar::rational_i(e, 1)))?;
                }
            }
            if !entry.is_zero() {
                ad.insert((LorentzGen::M(i), j), entry);
            }
        }
        // [N_i, p_i] = -i p0 and [N_i, p0] = -i p_i
        ad.insert((LorentzGen::N(i), i as usize), p0.scalar_mul(&-i_s.clone()));
        ad.insert((LorentzGen::N(i), 0), p(i as usize)?.scalar_mul(&-i_s.clone()));
    }

    let mut spec = HopfSpec {
        kind: BasisKind::Classical,
        h_order,
        deg_cap: None,
        base,
        alphabets,
        ad,
        cop_base: Vec::new(),
        cop_lorentz: BTreeMap::new(),
        s_base: Vec::new(),
        s_lorentz: BTreeMap::new(),
        shift: shift.clone(),
        shift_inv: shift_inv.clone(),
    };

    // Coproducts of the momenta.
    let a_var = |mu: usize| -> Result<TruncSeries> {
        Ok(TruncSeries::var(spec.joint_vars(2), h_order, &format!("ap{mu}"))?)
    };
    let b_var = |mu: usize| -> Result<TruncSeries> {
        Ok(TruncSeries::var(spec.joint_vars(2), h_order, &format!("bp{mu}"))?)
    };
    let shift_b = spec.to_leg(&shift, 2, 1)?;
    let shift_inv_a = spec.to_leg(&shift_inv, 2, 0)?;

    let mut cop_base = Vec::with_capacity(4);
    {
        // cop(p0) = p0 x Xi + Xi^{-1} x p0 + h p_m Xi^{-1} x p_m
        let mut c = a_var(0)?.mul(&shift_b)?.add(&shift_inv_a.mul(&b_var(0)?)?)?;
        for m in 1..4 {
            let cross = a_var(m)?.mul(&shift_inv_a)?.mul(&b_var(m)?)?;
            c = c.add(&times_h(&cross, 1)?)?;
        }
        cop_base.push(c);
    }
    for k in 1..4 {
        cop_base.push(a_var(k)?.mul(&shift_b)?.add(&b_var(k)?)?);
    }
    spec.cop_base = cop_base;

    // Coproducts of the Lorentz letters.
    let one2 = TruncSeries::one(spec.joint_vars(2), h_order);
    for i in 1..=3u8 {
        let mut cm = CovTensor::zero(&spec, 2);
        cm.insert(Some((0, LorentzGen::M(i))), one2.clone())?;
        cm.insert(Some((1, LorentzGen::M(i))), one2.clone())?;
        spec.cop_lorentz.insert(LorentzGen::M(i), cm);

        let mut cn = CovTensor::zero(&spec, 2);
        cn.insert(Some((0, LorentzGen::N(i))), one2.clone())?;
        cn.insert(Some((1, LorentzGen::N(i))), shift_inv_a.clone())?;
        for m in 1..=3u8 {
            let mut coeff = TruncSeries::zero(spec.joint_vars(2), h_order);
            for j in 1..4usize {
                let e = epsilon3(i as usize, j, m as usize);
                if e != 0 {
                    coeff = coeff.add(&a_var(j)?.scalar_mul(&Scalar::from_int(-e)))?;
                }
            }
            if !coeff.is_zero() {
                let coeff = times_h(&coeff.mul(&shift_inv_a)?, 1)?;
                cn.insert(Some((1, LorentzGen::M(m))), coeff)?;
            }
        }
        spec.cop_lorentz.insert(LorentzGen::N(i), cn);
    }

    // Antipodes.
    let mut s_base = Vec::with_capacity(4);
    s_base.push(p0.neg().add(&times_h(&pvec2.mul(&shift_inv)?, 1)?)?);
    for k in 1..4 {
        s_base.push(p(k)?.mul(&shift_inv)?.neg());
    }
    spec.s_base = s_base;

    for i in 1..=3u8 {
        let mut sm = CovTensor::zero(&spec, 1);
        sm.insert(Some((0, LorentzGen::M(i))), TruncSeries::one(&v1, h_order).neg())?;
        spec.s_lorentz.insert(LorentzGen::M(i), sm);

        let mut sn = CovTensor::zero(&spec, 1);
        sn.insert(Some((0, LorentzGen::N(i))), shift.neg())?;
        for m in 1..=3u8 {
            let mut coeff = TruncSeries::zero(&v1, h_order);
            for j in 1..4usize {
                let e = epsilon3(i as usize, j, m as usize);
                if e != 0 {
                    coeff = coeff.add(&p(j)?.scalar_mul(&Scalar::from_int(-e)))?;
                }
            }
            if !coeff.is_zero() {
                sn.insert(Some((0, LorentzGen::M(m))), times_h(&coeff, 1)?)?;
            }
        }
        spec.s_lorentz.insert(LorentzGen::N(i), sn);
    }

    spec.verify_shift_laws()?;
    Ok(spec)
}

/// The shift presentation at deformation scale `kappa` (a positive rational).
///
/// Generators: `P1..P3`, the invertible `Pi0` and its inverse, rotations and
/// boosts. Everything is exact: series carry no `h` grading and a momentum
/// degree cap of 10 (far above the degree any structure map reaches, so no
/// information is lost — the cap only provides the invertibility bound for
/// geometric series).
///
/// ```text
/// [N_i, P_j]  = -(i/2) d_ij ( kappa (Pi0 - Pi0^{-1}) + kappa^{-1} Pvec^2 Pi0^{-1} )
/// [N_i, Pi0]  = -(i/kappa) P_i
/// cop(N_i) = N_i x 1 + Pi0^{-1} x N_i - (1/kappa) eps_ijm P_j Pi0^{-1} x M_m
/// cop(P_k) = P_k x Pi0 + 1 x P_k          cop(Pi0) = Pi0 x Pi0
/// S(N_i) = -Pi0 N_i - (1/kappa) eps_ijm P_j M_m
/// S(P_k) = -P_k Pi0^{-1}                  S(Pi0) = Pi0^{-1}
/// ```
pub fn build_kappa_qanalog(kappa: &BigRational) -> Result<HopfSpec> {
    if !kappa.is_positive() {
        return Err(HopfError::Invalid(format!(
            "deformation scale must be a positive rational, got {kappa}"
        )));
    }
    let h_order = 0;
    let cap = Some(10);
    let base: Vec<(String, bool)> = vec![
        ("P1".into(), false),
        ("P2".into(), false),
        ("P3".into(), false),
        ("Pi0".into(), true),
    ];
    let alphabets = make_alphabets(&base)?;
    let v1 = alphabets[0].clone();

    let pv = |i: usize| -> Result<TruncSeries> {
        Ok(TruncSeries::var(&v1, h_order, &format!("P{i}"))?.with_deg_cap(cap))
    };
    let pi0 = TruncSeries::var(&v1, h_order, "Pi0")?.with_deg_cap(cap);
    let pi0_inv = pi0.pow_int(-1)?;
    let mut pvec2 = TruncSeries::zero(&v1, h_order).with_deg_cap(cap);
    for i in 1..=3 {
        pvec2 = pvec2.add(&pv(i)?.mul(&pv(i)?)?)?;
    }

    let kap = Scalar::from_rational(kappa.clone());
    let inv_kap = Scalar::from_rational(BigRational::one() / kappa);
    let minus_i_over_kappa = Scalar::new(BigRational::from_integer(0.into()), -(BigRational::one() / kappa));
    let minus_half_i = Scalar::rational_i(-1, 2);

    let mut ad = BTreeMap::new();
    for i in 1..=3u8 {
        for j in 1..=3usize {
            let mut entry = TruncSeries::zero(&v1, h_order).with_deg_cap(cap);
            for l in 1..=3usize {
                let e = epsilon3(i as usize, j, l);
                if e != 0 {
                    entry = entry.add(&pv(l)?.scalar_mul(&Scalar::rational_i(e, 1)))?;
                }
            }
            if !entry.is_zero() {
                ad.insert((LorentzGen::M(i), j - 1), entry);
            }
        }
        // [N_i, P_i] = -(i/2)(kappa (Pi0 - Pi0^{-1}) + kappa^{-1} Pvec^2 Pi0^{-1})
        let deformed = pi0
            .sub(&pi0_inv)?
            .scalar_mul(&kap)
            .add(&pvec2.mul(&pi0_inv)?.scalar_mul(&inv_kap))?
            .scalar_mul(&minus_half_i);
        ad.insert((LorentzGen::N(i), (i - 1) as usize), deformed);
        // [N_i, Pi0] = -(i/kappa) P_i
        ad.insert((LorentzGen::N(i), 3), pv(i as usize)?.scalar_mul(&minus_i_over_kappa));
    }

    let mut spec = HopfSpec {
        kind: BasisKind::Shift { kappa: kappa.clone() },
        h_order,
        deg_cap: cap,
        base,
        alphabets,
        ad,
        cop_base: Vec::new(),
        cop_lorentz: BTreeMap::new(),
        s_base: Vec::new(),
        s_lorentz: BTreeMap::new(),
        shift: pi0.clone(),
        shift_inv: pi0_inv.clone(),
    };

    let v2 = spec.joint_vars(2).clone();
    let av = |name: &str| -> Result<TruncSeries> {
        Ok(TruncSeries::var(&v2, h_order, &format!("a{name}"))?.with_deg_cap(cap))
    };
    let bv = |name: &str| -> Result<TruncSeries> {
        Ok(TruncSeries::var(&v2, h_order, &format!("b{name}"))?.with_deg_cap(cap))
    };

    let mut cop_base = Vec::with_capacity(4);
    for i in 1..=3 {
        let name = format!("P{i}");
        cop_base.push(av(&name)?.mul(&bv("Pi0")?)?.add(&bv(&name)?)?);
    }
    cop_base.push(av("Pi0")?.mul(&bv("Pi0")?)?);
    spec.cop_base = cop_base;

    let one2 = TruncSeries::one(&v2, h_order).with_deg_cap(cap);
    let pi0_inv_a = spec.to_leg(&pi0_inv, 2, 0)?;
    for i in 1..=3u8 {
        let mut cm = CovTensor::zero(&spec, 2);
        cm.insert(Some((0, LorentzGen::M(i))), one2.clone())?;
        cm.insert(Some((1, LorentzGen::M(i))), one2.clone())?;
        spec.cop_lorentz.insert(LorentzGen::M(i), cm);

        let mut cn = CovTensor::zero(&spec, 2);
        cn.insert(Some((0, LorentzGen::N(i))), one2.clone())?;
        cn.insert(Some((1, LorentzGen::N(i))), pi0_inv_a.clone())?;
        for m in 1..=3u8 {
            let mut coeff = TruncSeries::zero(&v2, h_order).with_deg_cap(cap);
            for j in 1..=3usize {
                let e = epsilon3(i as usize, j, m as usize);
                if e != 0 {
                    coeff = coeff.add(&av(&format!("P{j}"))?.scalar_mul(&Scalar::from_int(-e)))?;
                }
            }
            if !coeff.is_zero() {
                cn.insert(
                    Some((1, LorentzGen::M(m))),
                    coeff.mul(&pi0_inv_a)?.scalar_mul(&inv_kap),
                )?;
            }
        }
        spec.cop_lorentz.insert(LorentzGen::N(i), cn);
    }

    let mut s_base = Vec::with_capacity(4);
    for i in 1..=3 {
        s_base.push(pv(i)?.mul(&pi0_inv)?.neg());
    }
    s_base.push(pi0_inv.clone());
    spec.s_base = s_base;

    for i in 1..=3u8 {
        let mut sm = CovTensor::zero(&spec, 1);
        sm.insert(
            Some((0, LorentzGen::M(i))),
            TruncSeries::one(&v1, h_order).with_deg_cap(cap).neg(),
        )?;
        spec.s_lorentz.insert(LorentzGen::M(i), sm);

        let mut sn = CovTensor::zero(&spec, 1);
        sn.insert(Some((0, LorentzGen::N(i))), pi0.neg())?;
        for m in 1..=3u8 {
            let mut coeff = TruncSeries::zero(&v1, h_order).with_deg_cap(cap);
            for j in 1..=3usize {
                let e = epsilon3(i as usize, j, m as usize);
                if e != 0 {
                    coeff = coeff.add(&pv(j)?.scalar_mul(&Scalar::from_int(-e)))?;
                }
            }
            if !coeff.is_zero() {
                sn.insert(Some((0, LorentzGen::M(m))), coeff.scalar_mul(&inv_kap))?;
            }
        }
        spec.s_lorentz.insert(LorentzGen::N(i), sn);
    }

    spec.verify_shift_laws()?;
    Ok(spec)
}

impl HopfSpec {
    /// Construction-time consistency: the stored tables must make the shift
    /// element exactly group-like. `cop(Xi) = Xi x Xi`, `S(Xi) = Xi^{-1}`,
    /// `counit(Xi) = 1`, and the same for the inverse.
    fn verify_shift_laws(&self) -> Result<()> {
        let want = self
            .to_leg(&self.shift, 2, 0)?
            .mul(&self.to_leg(&self.shift, 2, 1)?)?;
        if !self.cop_series(&self.shift)?.sub(&want)?.is_zero() {
            return Err(HopfError::Invalid(
                "structure tables break cop(shift) = shift x shift".into(),
            ));
        }
        let want_inv = self
            .to_leg(&self.shift_inv, 2, 0)?
            .mul(&self.to_leg(&self.shift_inv, 2, 1)?)?;
        if !self.cop_series(&self.shift_inv)?.sub(&want_inv)?.is_zero() {
            return Err(HopfError::Invalid(
                "structure tables break cop(shift^{-1}) = shift^{-1} x shift^{-1}".into(),
            ));
        }
        if !self.antipode_series(&self.shift)?.sub(&self.shift_inv)?.is_zero() {
            return Err(HopfError::Invalid(
                "structure tables break S(shift) = shift^{-1}".into(),
            ));
        }
        if !self.antipode_series(&self.shift_inv)?.sub(&self.shift)?.is_zero() {
            return Err(HopfError::Invalid(
                "structure tables break S(shift^{-1}) = shift".into(),
            ));
        }
        let eps = self.counit_series(&self.shift)?;
        let one = TruncSeries::one(eps.vars(), eps.h_order());
        if !eps.sub(&one)?.is_zero() {
            return Err(HopfError::Invalid("structure tables break counit(shift) = 1".into()));
        }
        Ok(())
    }
}
