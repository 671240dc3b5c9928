//! Tensor legs for the deformed symmetry algebra.
//!
//! Every element the Hopf-axiom battery has to manipulate — generators,
//! coproducts, double coproducts, antipode images, commutators of any of
//! those — is a sum of terms of the shape
//!
//! ```text
//! (joint momentum series over per-leg alphabets) * (at most one Lorentz letter on one leg)
//! ```
//!
//! The momentum sector is commutative, rotations/boosts act on it by the
//! derivation
//!
//! ```text
//! ad_g(f) = sum_v [g, v] * df/dv        (v runs over one leg's base symbols)
//! ```
//!
//! and the letters close under the Lie bracket, so this span is stable under
//! every operation below. Products of two letter-carrying terms stay
//! representable only when their series prefactor vanishes; [`CovTensor::mul`]
//! reports the offending pair otherwise, and none of the shipped checks ever
//! trigger it (commutators cancel or close those cross terms instead — see
//! [`CovTensor::commutator`]).
//!
//! Legs are addressed by per-leg variable prefixes (`a`, `b`, `c`; one-leg
//! tensors use bare names). The letter is always kept to the *right* of its
//! term's series, which is well-defined because moving a letter across a
//! series only produces further series terms via `ad`.

use std::collections::BTreeMap;
use std::sync::Arc;

use series_core::{Scalar, TruncSeries, VarSet};

use crate::basis::HopfSpec;
use crate::error::{HopfError, Result};
use crate::lorentz::{lie_bracket, LorentzGen};

/// Key of one term: `None` for a pure momentum series, otherwise the leg
/// index and letter of the single Lorentz factor.
pub type TermKey = Option<(u8, LorentzGen)>;

#[derive(Debug, Clone)]
pub struct CovTensor {
    legs: u8,
    h_order: u32,
    vars: Arc<VarSet>,
    terms: BTreeMap<TermKey, TruncSeries>,
}

impl CovTensor {
    pub fn zero(spec: &HopfSpec, legs: u8) -> Self {
        assert!((1..=3).contains(&legs), "tensor legs must be 1..=3");
        CovTensor {
            legs,
            h_order: spec.h_order(),
            vars: spec.joint_vars(legs).clone(),
            terms: BTreeMap::new(),
        }
    }

    /// A pure momentum series term.
    pub fn from_series(spec: &HopfSpec, legs: u8, s: &TruncSeries) -> Result<Self> {
        let mut t = Self::zero(spec, legs);
        t.insert(None, s.clone())?;
        Ok(t)
    }

    /// A single letter with coefficient one.
    pub fn from_letter(spec: &HopfSpec, legs: u8, leg: u8, g: LorentzGen) -> Result<Self> {
        let mut t = Self::zero(spec, legs);
        let one = TruncSeries::one(spec.joint_vars(legs), spec.h_order()).with_deg_cap(spec.deg_cap());
        t.insert(Some((leg, g)), one)?;
        Ok(t)
    }

    /// The multiplicative unit.
    pub fn one(spec: &HopfSpec, legs: u8) -> Self {
        let mut t = Self::zero(spec, legs);
        let one = TruncSeries::one(spec.joint_vars(legs), spec.h_order()).with_deg_cap(spec.deg_cap());
        t.terms.insert(None, one);
        t
    }

    pub fn legs(&self) -> u8 {
        self.legs
    }

    pub fn h_order(&self) -> u32 {
        self.h_order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &TruncSeries)> {
        self.terms.iter()
    }

    /// Coefficient of a key (zero series when absent).
    pub fn coefficient(&self, key: &TermKey) -> TruncSeries {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| TruncSeries::zero(&self.vars, self.h_order))
    }

    /// Largest `h`-adic size across all coefficients; `0.0` iff zero.
    pub fn ultra_norm(&self) -> f64 {
        self.terms.values().map(|s| s.ultra_norm()).fold(0.0, f64::max)
    }

    /// Accumulates `series` into the coefficient of `key`, keeping the map
    /// free of stored zeros. Incoming series are re-aligned onto the tensor's
    /// joint alphabet, which also rejects foreign variables.
    pub(crate) fn insert(&mut self, key: TermKey, series: TruncSeries) -> Result<()> {
        if let Some((leg, _)) = key {
            if leg >= self.legs {
                return Err(HopfError::Invalid(format!(
                    "letter on leg {leg} of a {}-leg tensor",
                    self.legs
                )));
            }
        }
        if series.is_zero() {
            return Ok(());
        }
        if series.h_order() != self.h_order {
            return Err(HopfError::Invalid(format!(
                "coefficient at order {} inserted into an order-{} tensor",
                series.h_order(),
                self.h_order
            )));
        }
        let aligned = series.align_to(&self.vars)?;
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, aligned);
            }
            Some(existing) => {
                let sum = existing.add(&aligned)?;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
        Ok(())
    }

    fn check_legs(&self, rhs: &Self, what: &str) -> Result<()> {
        if self.legs != rhs.legs {
            return Err(HopfError::Invalid(format!(
                "{what} between a {}-leg and a {}-leg tensor",
                self.legs, rhs.legs
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_legs(rhs, "sum")?;
        let mut out = self.clone();
        for (k, s) in &rhs.terms {
            out.insert(*k, s.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for s in out.terms.values_mut() {
            *s = s.neg();
        }
        out
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            let mut out = self.clone();
            out.terms.clear();
            return out;
        }
        let mut out = self.clone();
        for s in out.terms.values_mut() {
            *s = s.scalar_mul(c);
        }
        out
    }

    /// Multiplies every coefficient by a momentum series (a central factor
    /// w.r.t. the momentum sector; note this is *left* multiplication when a
    /// letter is present, `f * (T g) = (f T) g`).
    pub fn series_mul(&self, f: &TruncSeries) -> Result<Self> {
        let mut out = self.clone();
        out.terms.clear();
        for (k, s) in &self.terms {
            out.insert(*k, s.mul(f)?)?;
        }
        Ok(out)
    }

    /// The derivation action of letter `g` on `leg` applied to a joint
    /// series: `ad_g(f) = sum_v [g, v] * df/dv` over that leg's symbols.
    pub(crate) fn ad_on_series(
        spec: &HopfSpec,
        g: LorentzGen,
        legs: u8,
        leg: u8,
        series: &TruncSeries,
    ) -> Result<TruncSeries> {
        let mut acc = TruncSeries::zero(spec.joint_vars(legs), series.h_order())
            .with_deg_cap(spec.deg_cap());
        for idx in 0..spec.num_base() {
            let Some(entry) = spec.ad_entry(g, idx) else { continue };
            let name = spec.leg_name(legs, leg, idx);
            let d = series.derivative(&name)?;
            if d.is_zero() {
                continue;
            }
            acc = acc.add(&spec.to_leg(entry, legs, leg)?.mul(&d)?)?;
        }
        Ok(acc)
    }

    /// Product. Letters are moved to the right through series via `ad`;
    /// a genuine letter-letter product (nonvanishing series prefactor on both
    /// sides, any legs) is not representable and is reported as an error.
    pub fn mul(&self, rhs: &Self, spec: &HopfSpec) -> Result<Self> {
        self.check_legs(rhs, "product")?;
        let mut out = self.clone();
        out.terms.clear();
        for (k1, s) in &self.terms {
            for (k2, t) in &rhs.terms {
                match (k1, k2) {
                    (None, _) => out.insert(*k2, s.mul(t)?)?,
                    (Some((l, g)), None) => {
                        // (S g) T = S T g + S ad_g(T)
                        out.insert(*k1, s.mul(t)?)?;
                        out.insert(None, s.mul(&Self::ad_on_series(spec, *g, self.legs, *l, t)?)?)?;
                    }
                    (Some((l, g)), Some((m, g2))) => {
                        // (S g)(T g2) = S T g g2 + S ad_g(T) g2; the first
                        // piece is representable only when S T = 0.
                        let st = s.mul(t)?;
                        if !st.is_zero() {
                            return Err(HopfError::LorentzQuadratic(format!(
                                "{g} (leg {l}) times {g2} (leg {m}) with nonzero prefactor"
                            )));
                        }
                        out.insert(
                            *k2,
                            s.mul(&Self::ad_on_series(spec, *g, self.legs, *l, t)?)?,
                        )?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Commutator. Always representable: letter-letter cross terms cancel
    /// across different legs and close into the Lie bracket on the same leg.
    pub fn commutator(&self, rhs: &Self, spec: &HopfSpec) -> Result<Self> {
        self.check_legs(rhs, "commutator")?;
        let mut out = self.clone();
        out.terms.clear();
        for (k1, s) in &self.terms {
            for (k2, t) in &rhs.terms {
                match (k1, k2) {
                    (None, None) => {}
                    (None, Some((m, g2))) => {
                        // [S, T g2] = -T ad_{g2}(S)
                        let ad = Self::ad_on_series(spec, *g2, self.legs, *m, s)?;
                        out.insert(None, t.mul(&ad)?.neg())?;
                    }
                    (Some((l, g)), None) => {
                        // [S g, T] = S ad_g(T)
                        let ad = Self::ad_on_series(spec, *g, self.legs, *l, t)?;
                        out.insert(None, s.mul(&ad)?)?;
                    }
                    (Some((l, g)), Some((m, g2))) => {
                        let ad_t = Self::ad_on_series(spec, *g, self.legs, *l, t)?;
                        out.insert(*k2, s.mul(&ad_t)?)?;
                        let ad_s = Self::ad_on_series(spec, *g2, self.legs, *m, s)?;
                        out.insert(*k1, t.mul(&ad_s)?.neg())?;
                        if l == m {
                            let st = s.mul(t)?;
                            for (c, g3) in lie_bracket(*g, *g2) {
                                out.insert(Some((*l, g3)), st.scalar_mul(&c))?;
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coproduct applied to leg `j`: an n-leg tensor becomes (n+1)-leg, with
    /// leg `j` split into legs `(j, j+1)`. Series coefficients transform by
    /// substituting each base symbol's coproduct; a letter on leg `j` expands
    /// through the stored Lorentz coproduct.
    pub fn delta_leg(&self, j: u8, spec: &HopfSpec) -> Result<Self> {
        if self.legs >= 3 {
            return Err(HopfError::Invalid("coproduct beyond three legs".into()));
        }
        if j >= self.legs {
            return Err(HopfError::Invalid(format!(
                "coproduct on leg {j} of a {}-leg tensor",
                self.legs
            )));
        }
        let n = self.legs;
        let out_legs = n + 1;
        let mut out = Self::zero(spec, out_legs);

        // Renames for unsplit legs right of j, then coproduct bindings for leg j.
        let mut rename_pairs: Vec<(String, String)> = Vec::new();
        for k in (j + 1)..n {
            for idx in 0..spec.num_base() {
                rename_pairs.push((
                    spec.leg_name(n, k, idx),
                    spec.leg_name(out_legs, k + 1, idx),
                ));
            }
        }
        // Legs left of j keep their prefix across the split.
        for k in 0..j {
            for idx in 0..spec.num_base() {
                let from = spec.leg_name(n, k, idx);
                let to = spec.leg_name(out_legs, k, idx);
                if from != to {
                    rename_pairs.push((from, to));
                }
            }
        }
        let cops: Vec<TruncSeries> = (0..spec.num_base())
            .map(|idx| spec.two_leg_to(spec.cop_of_base(idx), out_legs, j, j + 1))
            .collect::<Result<_>>()?;
        let names: Vec<String> =
            (0..spec.num_base()).map(|idx| spec.leg_name(n, j, idx)).collect();

        for (key, s) in &self.terms {
            let renamed = if rename_pairs.is_empty() {
                s.clone()
            } else {
                let borrowed: Vec<(&str, &str)> =
                    rename_pairs.iter().map(|(f, t)| (f.as_str(), t.as_str())).collect();
                s.rename(&borrowed)?
            };
            let bindings: Vec<(&str, &TruncSeries)> = names
                .iter()
                .zip(cops.iter())
                .map(|(n, c)| (n.as_str(), c))
                .collect();
            let split = renamed.substitute(&bindings)?;

            match key {
                None => out.insert(None, split)?,
                Some((l, g)) if *l != j => {
                    let nl = if *l > j { *l + 1 } else { *l };
                    out.insert(Some((nl, *g)), split)?;
                }
                Some((_, g)) => {
                    for (k2, t) in spec.cop_of_lorentz(*g).terms() {
                        let t2 = spec.two_leg_to(t, out_legs, j, j + 1)?;
                        let out_key = k2.map(|(l2, g2)| (j + l2, g2));
                        out.insert(out_key, split.mul(&t2)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Counit applied to leg `j` of an n-leg tensor (n >= 2): plain momenta
    /// evaluate to 0, invertible symbols to 1, a letter on that leg kills the
    /// term. Remaining legs close ranks.
    pub fn counit_leg(&self, j: u8, spec: &HopfSpec) -> Result<Self> {
        if self.legs < 2 {
            return Err(HopfError::Invalid(
                "leg counit needs at least two legs; use counit_scalar for one".into(),
            ));
        }
        if j >= self.legs {
            return Err(HopfError::Invalid(format!(
                "counit on leg {j} of a {}-leg tensor",
                self.legs
            )));
        }
        let n = self.legs;
        let out_legs = n - 1;
        let mut out = Self::zero(spec, out_legs);

        let empty = VarSet::new(Vec::<(String, bool)>::new())?;
        let zero_c = TruncSeries::zero(&empty, self.h_order);
        let one_c = TruncSeries::one(&empty, self.h_order);
        let names: Vec<String> =
            (0..spec.num_base()).map(|idx| spec.leg_name(n, j, idx)).collect();
        let bindings: Vec<(&str, &TruncSeries)> = names
            .iter()
            .enumerate()
            .map(|(idx, name)| {
                let c = if spec.base_vars()[idx].1 { &one_c } else { &zero_c };
                (name.as_str(), c)
            })
            .collect();

        let mut rename_pairs: Vec<(String, String)> = Vec::new();
        for k in 0..n {
            if k == j {
                continue;
            }
            let nk = if k > j { k - 1 } else { k };
            for idx in 0..spec.num_base() {
                let from = spec.leg_name(n, k, idx);
                let to = spec.leg_name(out_legs, nk, idx);
                if from != to {
                    rename_pairs.push((from, to));
                }
            }
        }

        for (key, s) in &self.terms {
            let new_key = match key {
                Some((l, _)) if *l == j => continue,
                Some((l, g)) => Some((if *l > j { *l - 1 } else { *l }, *g)),
                None => None,
            };
            let evaled = s.substitute(&bindings)?;
            let renamed = if rename_pairs.is_empty() {
                evaled
            } else {
                let borrowed: Vec<(&str, &str)> =
                    rename_pairs.iter().map(|(f, t)| (f.as_str(), t.as_str())).collect();
                evaled.rename(&borrowed)?
            };
            out.insert(new_key, renamed)?;
        }
        Ok(out)
    }

    /// Full counit of a one-leg tensor, as a scalar-only series (letters
    /// carry counit zero).
    pub fn counit_scalar(&self, spec: &HopfSpec) -> Result<TruncSeries> {
        if self.legs != 1 {
            return Err(HopfError::Invalid("counit_scalar needs a one-leg tensor".into()));
        }
        let empty = VarSet::new(Vec::<(String, bool)>::new())?;
        let mut acc = TruncSeries::zero(&empty, self.h_order);
        if let Some(s) = self.terms.get(&None) {
            acc = acc.add(&spec.counit_series(s)?)?;
        }
        Ok(acc)
    }

    /// Antipode applied to leg `j`: series coefficients transform by
    /// substituting each base symbol's antipode image; a letter `g` on that
    /// leg becomes `S(g)` multiplied from the left (the antipode reverses the
    /// series-letter order within the leg).
    pub fn antipode_leg(&self, j: u8, spec: &HopfSpec) -> Result<Self> {
        if j >= self.legs {
            return Err(HopfError::Invalid(format!(
                "antipode on leg {j} of a {}-leg tensor",
                self.legs
            )));
        }
        let n = self.legs;
        let mut out = Self::zero(spec, n);
        let names: Vec<String> =
            (0..spec.num_base()).map(|idx| spec.leg_name(n, j, idx)).collect();
        let images: Vec<TruncSeries> = (0..spec.num_base())
            .map(|idx| spec.to_leg(spec.s_of_base(idx), n, j))
            .collect::<Result<_>>()?;
        let bindings: Vec<(&str, &TruncSeries)> = names
            .iter()
            .zip(images.iter())
            .map(|(nm, im)| (nm.as_str(), im))
            .collect();

        for (key, s) in &self.terms {
            let mapped = s.substitute(&bindings)?;
            match key {
                Some((l, g)) if *l == j => {
                    // S(T g) = S(g) S(T): lift the stored one-leg S(g) onto
                    // leg j and multiply it onto the mapped series.
                    let mut lifted = Self::zero(spec, n);
                    for (k2, a) in spec.s_of_lorentz(*g).terms() {
                        let a2 = spec.to_leg(a, n, j)?;
                        let key2 = k2.map(|(_, g2)| (j, g2));
                        lifted.insert(key2, a2)?;
                    }
                    let rhs = {
                        let mut t = Self::zero(spec, n);
                        t.insert(None, mapped)?;
                        t
                    };
                    out = out.add(&lifted.mul(&rhs, spec)?)?;
                }
                other => out.insert(*other, mapped)?,
            }
        }
        Ok(out)
    }

    /// Multiplies the two legs of a two-leg tensor into one (`x (x) y -> x y`,
    /// leg 0 to the left). A letter on leg 0 first acts on leg 1's variables
    /// by `ad` as it moves right.
    pub fn merge_legs(&self, spec: &HopfSpec) -> Result<Self> {
        if self.legs != 2 {
            return Err(HopfError::Invalid("merge_legs needs a two-leg tensor".into()));
        }
        let mut staged: Vec<(TermKey, TruncSeries)> = Vec::new();
        for (key, s) in &self.terms {
            match key {
                None => staged.push((None, s.clone())),
                Some((1, g)) => staged.push((Some((0, *g)), s.clone())),
                Some((0, g)) => {
                    staged.push((Some((0, *g)), s.clone()));
                    staged.push((None, Self::ad_on_series(spec, *g, 2, 1, s)?));
                }
                _ => unreachable!("two-leg tensor with leg index > 1"),
            }
        }

        // Identify leg 1's variables with leg 0's, then drop the prefix. The
        // binding series live over an a-leg-only alphabet so the substitution
        // result doesn't reacquire the b-leg names.
        let a_only = VarSet::new(
            (0..spec.num_base())
                .map(|idx| (spec.leg_name(2, 0, idx), spec.base_vars()[idx].1))
                .collect::<Vec<_>>(),
        )?;
        let a_names: Vec<String> =
            (0..spec.num_base()).map(|idx| spec.leg_name(2, 0, idx)).collect();
        let b_names: Vec<String> =
            (0..spec.num_base()).map(|idx| spec.leg_name(2, 1, idx)).collect();
        let a_series: Vec<TruncSeries> = a_names
            .iter()
            .map(|n| {
                Ok(TruncSeries::var(&a_only, self.h_order, n)?.with_deg_cap(spec.deg_cap()))
            })
            .collect::<Result<_>>()?;
        let bindings: Vec<(&str, &TruncSeries)> = b_names
            .iter()
            .zip(a_series.iter())
            .map(|(n, s)| (n.as_str(), s))
            .collect();
        let rename_pairs: Vec<(String, String)> = (0..spec.num_base())
            .map(|idx| (spec.leg_name(2, 0, idx), spec.leg_name(1, 0, idx)))
            .collect();
        let borrowed: Vec<(&str, &str)> =
            rename_pairs.iter().map(|(f, t)| (f.as_str(), t.as_str())).collect();

        let mut out = Self::zero(spec, 1);
        for (key, s) in staged {
            let merged = s.substitute(&bindings)?.rename(&borrowed)?;
            out.insert(key, merged)?;
        }
        Ok(out)
    }

    /// `self - rhs`, collapsed to its ultrametric size.
    pub fn residual(&self, rhs: &Self) -> Result<f64> {
        Ok(self.sub(rhs)?.ultra_norm())
    }
}
