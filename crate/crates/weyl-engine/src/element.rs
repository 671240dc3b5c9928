//! Normal-ordered elements of the position/momentum operator algebra and its
//! tensor powers.
//!
//! An element is a finite sum of monomials
//!
//! ```text
//!   c · h^k · (x^{A_1} p^{a_1}) ⊗ … ⊗ (x^{A_L} p^{a_L})
//! ```
//!
//! with Gaussian-rational coefficients `c`, one shared deformation order `k`
//! (the deformation parameter scales all tensor legs at once), and per-leg
//! exponent blocks in normal order: every position factor to the left of every
//! momentum factor. The single defining relation per leg is
//!
//! ```text
//!   [p_mu, x^nu] = -i delta^nu_mu ,
//! ```
//!
//! which is metric-independent; the metric stored on the element is used only
//! by index raising/lowering helpers elsewhere. Products are reduced to normal
//! order in closed form: for a single direction,
//!
//! ```text
//!   p^m x^n = sum_j j! C(m,j) C(n,j) (-i)^j x^{n-j} p^{m-j} ,
//! ```
//!
//! applied independently per direction and per leg, so no rewriting recursion
//! is needed and confluence is automatic.
//!
//! One element type covers all leg counts: `legs == 1` is an ordinary operator,
//! `legs == 2` a tensor-square element (twist material), `legs == 3` appears in
//! cocycle and Yang-Baxter checks. Binary operations require matching leg
//! counts, truncation orders, and metrics.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use series_core::{Scalar, TruncSeries, VarSet};

use crate::error::{Result, WeylError};
use crate::metric::MetricSig;

/// Exponent block width per tensor leg: four position + four momentum slots.
const LEG_W: usize = 8;

/// Normal-ordered element of the operator algebra (or a tensor power of it).
#[derive(Debug, Clone)]
pub struct NormalOrdered {
    legs: u8,
    h_order: u32,
    /// Optional cap on the total momentum degree (summed over legs). Needed by
    /// constructions graded by momentum degree instead of deformation order.
    deg_cap: Option<u32>,
    metric: Arc<MetricSig>,
    /// Key layout: `[h, leg0: x0..x3 p0..p3, leg1: …]`.
    terms: BTreeMap<Vec<u16>, Scalar>,
}

/// Single-leg view: an ordinary operator on the position polynomial module.
pub type WeylElement = NormalOrdered;

fn key_len(legs: u8) -> usize {
    1 + LEG_W * legs as usize
}

fn idx_x(leg: usize, mu: usize) -> usize {
    1 + LEG_W * leg + mu
}

fn idx_p(leg: usize, mu: usize) -> usize {
    1 + LEG_W * leg + 4 + mu
}

fn p_total(key: &[u16], legs: u8) -> u32 {
    let mut t = 0u32;
    for leg in 0..legs as usize {
        for mu in 0..4 {
            t += key[idx_p(leg, mu)] as u32;
        }
    }
    t
}

fn combine_caps(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

fn factorial(n: u16) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

fn binom(n: u16, k: u16) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `(-i)^j` as a scalar.
fn minus_i_pow(j: u32) -> Scalar {
    match j % 4 {
        0 => Scalar::one(),
        1 => Scalar::minus_i(),
        2 => -Scalar::one(),
        _ => Scalar::i(),
    }
}

/// Contraction weights for one direction: all `(j, j! C(m,j) C(n,j))` with
/// `0 <= j <= min(m, n)` where `m` momentum factors pass `n` position factors.
fn reduction_choices(m: u16, n: u16) -> Vec<(u16, BigInt)> {
    let jmax = m.min(n);
    let mut out = Vec::with_capacity(jmax as usize + 1);
    for j in 0..=jmax {
        out.push((j, factorial(j) * binom(m, j) * binom(n, j)));
    }
    out
}

impl NormalOrdered {
    // ----- constructors -------------------------------------------------

    /// Additive zero with the given shape.
    pub fn zero(legs: u8, h_order: u32, metric: &MetricSig) -> Self {
        assert!(legs >= 1, "element must have at least one tensor leg");
        NormalOrdered {
            legs,
            h_order,
            deg_cap: None,
            metric: Arc::new(metric.clone()),
            terms: BTreeMap::new(),
        }
    }

    /// Multiplicative unit (`1` or `1 ⊗ … ⊗ 1`).
    pub fn one(legs: u8, h_order: u32, metric: &MetricSig) -> Self {
        Self::scalar(legs, h_order, metric, Scalar::one())
    }

    /// Scalar multiple of the unit.
    pub fn scalar(legs: u8, h_order: u32, metric: &MetricSig, c: Scalar) -> Self {
        let mut el = Self::zero(legs, h_order, metric);
        if !c.is_zero() {
            el.terms.insert(vec![0; key_len(legs)], c);
        }
        el
    }

    /// Single-leg position generator `x^mu`.
    pub fn x(mu: usize, h_order: u32, metric: &MetricSig) -> Self {
        let mut el = Self::zero(1, h_order, metric);
        let mut key = vec![0u16; key_len(1)];
        key[idx_x(0, mu)] = 1;
        el.terms.insert(key, Scalar::one());
        el
    }

    /// Single-leg momentum generator `p_mu`.
    pub fn p(mu: usize, h_order: u32, metric: &MetricSig) -> Self {
        let mut el = Self::zero(1, h_order, metric);
        let mut key = vec![0u16; key_len(1)];
        key[idx_p(0, mu)] = 1;
        el.terms.insert(key, Scalar::one());
        el
    }

    /// `h^k` times the unit (zero if `k` exceeds the truncation order).
    pub fn h_power(k: u32, legs: u8, h_order: u32, metric: &MetricSig) -> Self {
        let mut el = Self::zero(legs, h_order, metric);
        if k <= h_order {
            let mut key = vec![0u16; key_len(legs)];
            key[0] = k as u16;
            el.terms.insert(key, Scalar::one());
        }
        el
    }

    /// General single-leg monomial `c · h^k · x^{xs} p^{ps}`.
    pub fn monomial(
        h: u32,
        xs: [u16; 4],
        ps: [u16; 4],
        c: Scalar,
        h_order: u32,
        metric: &MetricSig,
    ) -> Self {
        let mut el = Self::zero(1, h_order, metric);
        if c.is_zero() || h > h_order {
            return el;
        }
        let mut key = vec![0u16; key_len(1)];
        key[0] = h as u16;
        key[1..5].copy_from_slice(&xs);
        key[5..9].copy_from_slice(&ps);
        el.terms.insert(key, c);
        el
    }

    /// Import a momentum-dependent coefficient series as a single-leg element.
    ///
    /// Every series variable must be bound to a momentum direction through
    /// `vars`, e.g. `&[("p0", 0), ("p1", 1)]`; exponents must be non-negative
    /// (the operator layer has no inverse-momentum symbols). The series'
    /// momentum-degree cap, if any, is carried over.
    pub fn from_momentum_series(
        series: &TruncSeries,
        vars: &[(&str, usize)],
        metric: &MetricSig,
    ) -> Result<Self> {
        let mut slot_of = Vec::with_capacity(series.vars().len());
        for v in series.vars().vars() {
            let &(_, mu) = vars
                .iter()
                .find(|(name, _)| *name == v.name)
                .ok_or_else(|| WeylError::Invalid(format!("unbound series variable {}", v.name)))?;
            if mu > 3 {
                return Err(WeylError::Invalid(format!("momentum index {mu} out of range")));
            }
            slot_of.push(mu);
        }
        let mut el = Self::zero(1, series.h_order(), metric);
        el.deg_cap = series.deg_cap();
        for (key, c) in series.iter_terms() {
            let mut k = vec![0u16; key_len(1)];
            k[0] = key[0] as u16;
            for (vi, &mu) in slot_of.iter().enumerate() {
                let e = key[vi + 1];
                if e < 0 {
                    return Err(WeylError::Invalid(format!(
                        "negative exponent on {} cannot enter the operator layer",
                        series.vars().name(vi)
                    )));
                }
                k[idx_p(0, mu)] += e as u16;
            }
            el.terms.insert(k, c.clone());
        }
        Ok(el)
    }

    /// Export a single-leg, position-free element as a momentum series over
    /// the variables `p0..p3`.
    pub fn to_momentum_series(&self) -> Result<TruncSeries> {
        self.expect_legs(1)?;
        let names = ["p0", "p1", "p2", "p3"];
        let vars: Arc<VarSet> = VarSet::standard(&names, None).expect("fixed alphabet");
        let mut acc = TruncSeries::zero(&vars, self.h_order);
        if let Some(cap) = self.deg_cap {
            acc = acc.with_deg_cap(Some(cap));
        }
        for (key, c) in &self.terms {
            for mu in 0..4 {
                if key[idx_x(0, mu)] != 0 {
                    return Err(WeylError::Invalid(
                        "element has position content; not a momentum series".into(),
                    ));
                }
            }
            let exps: Vec<(&str, i32)> = (0..4)
                .map(|mu| (names[mu], key[idx_p(0, mu)] as i32))
                .collect();
            let mono =
                TruncSeries::monomial(&vars, self.h_order, key[0] as u32, &exps, c.clone())?;
            acc = acc.add(&mono)?;
        }
        Ok(acc)
    }

    // ----- shape accessors ----------------------------------------------

    pub fn legs(&self) -> u8 {
        self.legs
    }

    pub fn h_order(&self) -> u32 {
        self.h_order
    }

    pub fn deg_cap(&self) -> Option<u32> {
        self.deg_cap
    }

    pub fn metric(&self) -> &MetricSig {
        &self.metric
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Replace the momentum-degree cap, dropping terms that exceed a tighter
    /// one. Raising or removing the cap never restores dropped terms.
    pub fn with_deg_cap(mut self, cap: Option<u32>) -> Self {
        self.deg_cap = cap;
        if let Some(c) = cap {
            self.terms.retain(|k, _| p_total(k, self.legs) <= c);
        }
        self
    }

    /// Coefficient of a single-leg monomial (zero when absent).
    pub fn coefficient(&self, h: u32, xs: [u16; 4], ps: [u16; 4]) -> Scalar {
        if self.legs != 1 {
            return Scalar::zero();
        }
        let mut key = vec![0u16; key_len(1)];
        key[0] = h as u16;
        key[1..5].copy_from_slice(&xs);
        key[5..9].copy_from_slice(&ps);
        self.terms.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    fn expect_legs(&self, n: u8) -> Result<()> {
        if self.legs != n {
            return Err(WeylError::WrongLegCount { expected: n, found: self.legs });
        }
        Ok(())
    }

    fn check_compat(&self, rhs: &Self) -> Result<()> {
        if self.legs != rhs.legs {
            return Err(WeylError::LegMismatch(self.legs, rhs.legs));
        }
        if self.h_order != rhs.h_order {
            return Err(WeylError::Series(series_core::SeriesError::OrderMismatch {
                left: self.h_order,
                right: rhs.h_order,
            }));
        }
        if self.metric != rhs.metric {
            return Err(WeylError::MetricMismatch(
                self.metric.to_string(),
                rhs.metric.to_string(),
            ));
        }
        Ok(())
    }

    fn admit(&self, key: &[u16]) -> bool {
        if key[0] as u32 > self.h_order {
            return false;
        }
        match self.deg_cap {
            Some(c) => p_total(key, self.legs) <= c,
            None => true,
        }
    }

    fn insert_acc(terms: &mut BTreeMap<Vec<u16>, Scalar>, key: Vec<u16>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn shape_like(&self, cap: Option<u32>) -> Self {
        NormalOrdered {
            legs: self.legs,
            h_order: self.h_order,
            deg_cap: cap,
            metric: Arc::clone(&self.metric),
            terms: BTreeMap::new(),
        }
    }

    // ----- linear structure ----------------------------------------------

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compat(rhs)?;
        let mut out = self.shape_like(combine_caps(self.deg_cap, rhs.deg_cap));
        for (k, c) in &self.terms {
            if out.admit(k) {
                Self::insert_acc(&mut out.terms, k.clone(), c.clone());
            }
        }
        for (k, c) in &rhs.terms {
            if out.admit(k) {
                Self::insert_acc(&mut out.terms, k.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.shape_like(self.deg_cap);
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), -c);
        }
        out
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Self {
        let mut out = self.shape_like(self.deg_cap);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    // ----- multiplication -------------------------------------------------

    /// Product reduced to normal order.
    pub fn normal_product(&self, rhs: &Self) -> Result<Self> {
        self.check_compat(rhs)?;
        let mut out = self.shape_like(combine_caps(self.deg_cap, rhs.deg_cap));
        let legs = self.legs as usize;
        let klen = key_len(self.legs);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let h = ka[0] as u32 + kb[0] as u32;
                if h > self.h_order {
                    continue;
                }
                let base = ca * cb;

                // Directions where momentum factors of the left term must pass
                // position factors of the right term.
                let mut active: Vec<(usize, usize, Vec<(u16, BigInt)>)> = Vec::new();
                for leg in 0..legs {
                    for mu in 0..4 {
                        let m = ka[idx_p(leg, mu)];
                        let n = kb[idx_x(leg, mu)];
                        if m > 0 && n > 0 {
                            active.push((leg, mu, reduction_choices(m, n)));
                        }
                    }
                }

                let mut base_key = vec![0u16; klen];
                base_key[0] = h as u16;
                for leg in 0..legs {
                    for mu in 0..4 {
                        base_key[idx_x(leg, mu)] = ka[idx_x(leg, mu)] + kb[idx_x(leg, mu)];
                        base_key[idx_p(leg, mu)] = ka[idx_p(leg, mu)] + kb[idx_p(leg, mu)];
                    }
                }

                if active.is_empty() {
                    if out.admit(&base_key) {
                        Self::insert_acc(&mut out.terms, base_key, base);
                    }
                    continue;
                }

                // Walk the product of contraction choices with an odometer.
                let mut idxs = vec![0usize; active.len()];
                loop {
                    let mut key = base_key.clone();
                    let mut weight = BigInt::one();
                    let mut jtot = 0u32;
                    for (slot, (leg, mu, choices)) in active.iter().enumerate() {
                        let (j, w) = &choices[idxs[slot]];
                        key[idx_x(*leg, *mu)] -= j;
                        key[idx_p(*leg, *mu)] -= j;
                        weight *= w;
                        jtot += *j as u32;
                    }
                    if out.admit(&key) {
                        let w = Scalar::from_rational(BigRational::from(weight));
                        let c = &(&base * &w) * &minus_i_pow(jtot);
                        Self::insert_acc(&mut out.terms, key, c);
                    }
                    // advance
                    let mut pos = 0;
                    loop {
                        if pos == active.len() {
                            break;
                        }
                        idxs[pos] += 1;
                        if idxs[pos] < active[pos].2.len() {
                            break;
                        }
                        idxs[pos] = 0;
                        pos += 1;
                    }
                    if pos == active.len() {
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.normal_product(rhs)?.sub(&rhs.normal_product(self)?)
    }

    /// Non-negative integer power by repeated multiplication.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.legs, self.h_order, &self.metric).with_deg_cap(self.deg_cap);
        for _ in 0..n {
            acc = acc.normal_product(self)?;
        }
        Ok(acc)
    }

    fn graded_nilpotent(&self) -> bool {
        self.terms.iter().all(|(k, _)| {
            k[0] >= 1 || (self.deg_cap.is_some() && p_total(k, self.legs) >= 1)
        })
    }

    fn grading_bound(&self) -> u32 {
        self.h_order + self.deg_cap.unwrap_or(0) + 1
    }

    /// Exponential of a graded-nilpotent element. Every term must carry a
    /// positive power of the deformation parameter, or a positive momentum
    /// degree under an active momentum-degree cap; otherwise the series would
    /// not terminate and an error is returned.
    pub fn exp(&self) -> Result<Self> {
        if !self.graded_nilpotent() {
            return Err(WeylError::NotNilpotent(
                "exponent has an ungraded term (no deformation power, no capped momentum degree)"
                    .into(),
            ));
        }
        let mut acc = Self::one(self.legs, self.h_order, &self.metric).with_deg_cap(self.deg_cap);
        let mut term = acc.clone();
        for m in 1..=self.grading_bound() {
            term = term.normal_product(self)?;
            if term.is_zero() {
                break;
            }
            term = term.scalar_mul(&Scalar::rational(1, m as i64));
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Inverse of `c·1 + n` with `c` an invertible scalar and `n`
    /// graded-nilpotent, via the terminating geometric series.
    pub fn invert(&self) -> Result<Self> {
        let unit_key = vec![0u16; key_len(self.legs)];
        let lead = self
            .terms
            .get(&unit_key)
            .cloned()
            .ok_or_else(|| WeylError::NotInvertible("leading scalar part is zero".into()))?;
        let lead_inv = lead
            .inv()
            .map_err(|_| WeylError::NotInvertible("leading scalar part is zero".into()))?;
        // u = 1 - lead^{-1} * self  (unit term cancels exactly)
        let u = Self::one(self.legs, self.h_order, &self.metric)
            .with_deg_cap(self.deg_cap)
            .sub(&self.scalar_mul(&lead_inv))?;
        if !u.graded_nilpotent() {
            return Err(WeylError::NotInvertible(
                "non-scalar part is not graded-nilpotent".into(),
            ));
        }
        let mut acc = Self::one(self.legs, self.h_order, &self.metric).with_deg_cap(self.deg_cap);
        let mut pw = acc.clone();
        for _ in 1..=self.grading_bound() {
            pw = pw.normal_product(&u)?;
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw)?;
        }
        Ok(acc.scalar_mul(&lead_inv))
    }

    // ----- grading helpers -------------------------------------------------

    /// Lower the truncation order, discarding higher terms.
    pub fn truncate_to(&self, m: u32) -> Self {
        assert!(m <= self.h_order, "truncate_to cannot raise the order");
        let mut out = self.shape_like(self.deg_cap);
        out.h_order = m;
        for (k, c) in &self.terms {
            if (k[0] as u32) <= m {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Exact division by `h^k`: every term must carry at least `h^k`. The
    /// result's truncation order drops by `k` to reflect lost precision.
    pub fn div_h(&self, k: u32) -> Result<Self> {
        let mut out = self.shape_like(self.deg_cap);
        out.h_order = self
            .h_order
            .checked_sub(k)
            .ok_or_else(|| WeylError::Invalid("div_h below order zero".into()))?;
        for (key, c) in &self.terms {
            if (key[0] as u32) < k {
                return Err(WeylError::Series(series_core::SeriesError::HDivision {
                    power: k,
                    found: key[0] as u32,
                }));
            }
            let mut nk = key.clone();
            nk[0] -= k as u16;
            out.terms.insert(nk, c.clone());
        }
        Ok(out)
    }

    /// Multiplication by `h^k`; the truncation order rises by `k` so no term
    /// is lost.
    pub fn mul_h(&self, k: u32) -> Self {
        let mut out = self.shape_like(self.deg_cap);
        out.h_order = self.h_order + k;
        for (key, c) in &self.terms {
            let mut nk = key.clone();
            nk[0] += k as u16;
            out.terms.insert(nk, c.clone());
        }
        out
    }

    // ----- tensor structure -------------------------------------------------

    /// Tensor product: legs concatenate, deformation powers add.
    pub fn tensor(&self, rhs: &Self) -> Result<Self> {
        if self.h_order != rhs.h_order {
            return Err(WeylError::Series(series_core::SeriesError::OrderMismatch {
                left: self.h_order,
                right: rhs.h_order,
            }));
        }
        if self.metric != rhs.metric {
            return Err(WeylError::MetricMismatch(
                self.metric.to_string(),
                rhs.metric.to_string(),
            ));
        }
        let legs = self.legs + rhs.legs;
        let mut out = NormalOrdered {
            legs,
            h_order: self.h_order,
            deg_cap: combine_caps(self.deg_cap, rhs.deg_cap),
            metric: Arc::clone(&self.metric),
            terms: BTreeMap::new(),
        };
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let h = ka[0] as u32 + kb[0] as u32;
                if h > self.h_order {
                    continue;
                }
                let mut key = Vec::with_capacity(key_len(legs));
                key.push(h as u16);
                key.extend_from_slice(&ka[1..]);
                key.extend_from_slice(&kb[1..]);
                if out.admit(&key) {
                    Self::insert_acc(&mut out.terms, key, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Reorder tensor legs: output leg `j` is input leg `perm[j]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.legs as usize {
            return Err(WeylError::Invalid("permutation length != leg count".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &s in perm {
            if s >= perm.len() || seen[s] {
                return Err(WeylError::Invalid("not a permutation".into()));
            }
            seen[s] = true;
        }
        let mut out = self.shape_like(self.deg_cap);
        for (k, c) in &self.terms {
            let mut nk = vec![0u16; k.len()];
            nk[0] = k[0];
            for (j, &s) in perm.iter().enumerate() {
                let dst = 1 + LEG_W * j;
                let src = 1 + LEG_W * s;
                nk[dst..dst + LEG_W].copy_from_slice(&k[src..src + LEG_W]);
            }
            out.terms.insert(nk, c.clone());
        }
        Ok(out)
    }

    /// Swap the two legs of a tensor-square element.
    pub fn swap_legs(&self) -> Result<Self> {
        self.expect_legs(2)?;
        self.permute_legs(&[1, 0])
    }

    /// Insert a unit leg at position `pos` (identity on the new slot), growing
    /// the leg count by one. Embeds 2-leg objects into 3 legs, e.g. position
    /// 2 sends `a ⊗ b` to `a ⊗ b ⊗ 1`.
    pub fn insert_unit_leg(&self, pos: usize) -> Result<Self> {
        if pos > self.legs as usize {
            return Err(WeylError::Invalid("insertion position out of range".into()));
        }
        let mut out = NormalOrdered {
            legs: self.legs + 1,
            h_order: self.h_order,
            deg_cap: self.deg_cap,
            metric: Arc::clone(&self.metric),
            terms: BTreeMap::new(),
        };
        for (k, c) in &self.terms {
            let mut nk = Vec::with_capacity(key_len(out.legs));
            nk.push(k[0]);
            nk.extend_from_slice(&k[1..1 + LEG_W * pos]);
            nk.extend_from_slice(&[0u16; LEG_W]);
            nk.extend_from_slice(&k[1 + LEG_W * pos..]);
            out.terms.insert(nk, c.clone());
        }
        Ok(out)
    }

    /// Apply the counit to one leg and drop it: only terms where that leg is
    /// the identity monomial survive. On images of symmetry-algebra words this
    /// is exactly the Hopf counit, because every nonempty generator word ends
    /// in a momentum factor and therefore annihilates the constant state.
    pub fn counit_leg(&self, pos: usize) -> Result<Self> {
        if self.legs == 1 {
            return Err(WeylError::Invalid(
                "counit on the last leg yields a scalar series; use counit_series".into(),
            ));
        }
        if pos >= self.legs as usize {
            return Err(WeylError::Invalid("leg index out of range".into()));
        }
        let mut out = NormalOrdered {
            legs: self.legs - 1,
            h_order: self.h_order,
            deg_cap: self.deg_cap,
            metric: Arc::clone(&self.metric),
            terms: BTreeMap::new(),
        };
        let start = 1 + LEG_W * pos;
        for (k, c) in &self.terms {
            if k[start..start + LEG_W].iter().any(|&e| e != 0) {
                continue;
            }
            let mut nk = Vec::with_capacity(key_len(out.legs));
            nk.extend_from_slice(&k[..start]);
            nk.extend_from_slice(&k[start + LEG_W..]);
            out.terms.insert(nk, c.clone());
        }
        Ok(out)
    }

    /// Counit of a single-leg element as a series in the deformation
    /// parameter alone (coefficient of the identity monomial).
    pub fn counit_series(&self) -> Result<TruncSeries> {
        self.expect_legs(1)?;
        let vars = VarSet::standard(&[], None).expect("empty alphabet");
        let mut acc = TruncSeries::zero(&vars, self.h_order);
        for (k, c) in &self.terms {
            if k[1..].iter().any(|&e| e != 0) {
                continue;
            }
            let mono = TruncSeries::monomial(&vars, self.h_order, k[0] as u32, &[], c.clone())?;
            acc = acc.add(&mono)?;
        }
        Ok(acc)
    }

    // ----- module action -----------------------------------------------------

    /// True when no term carries momentum factors on any leg (a pure position
    /// polynomial, the module the algebra acts on).
    pub fn is_position_polynomial(&self) -> bool {
        self.terms.keys().all(|k| p_total(k, self.legs) == 0)
    }

    /// Left action on position polynomials: momenta act as `-i` times the
    /// corresponding derivative. Computed as the normal-ordered product
    /// followed by projection onto momentum degree zero, which is the standard
    /// quotient-module description, so `act(ab, f) = act(a, act(b, f))` holds
    /// exactly. Multi-leg elements act leg by leg on multi-leg polynomials.
    pub fn act(&self, target: &Self) -> Result<Self> {
        if !target.is_position_polynomial() {
            return Err(WeylError::NotPolynomial(target.to_string()));
        }
        Ok(self.normal_product(target)?.project_positions())
    }

    /// Keep only momentum-free terms.
    pub fn project_positions(&self) -> Self {
        let mut out = self.shape_like(self.deg_cap);
        for (k, c) in &self.terms {
            if p_total(k, self.legs) == 0 {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Multiply all legs of a position polynomial together (the commutative
    /// product), yielding a single-leg polynomial. Errors when any momentum
    /// factor is present.
    pub fn merge_position_legs(&self) -> Result<Self> {
        if !self.is_position_polynomial() {
            return Err(WeylError::NotPolynomial(self.to_string()));
        }
        let mut out = NormalOrdered {
            legs: 1,
            h_order: self.h_order,
            deg_cap: self.deg_cap,
            metric: Arc::clone(&self.metric),
            terms: BTreeMap::new(),
        };
        for (k, c) in &self.terms {
            let mut nk = vec![0u16; key_len(1)];
            nk[0] = k[0];
            for leg in 0..self.legs as usize {
                for mu in 0..4 {
                    nk[idx_x(0, mu)] += k[idx_x(leg, mu)];
                }
            }
            Self::insert_acc(&mut out.terms, nk, c.clone());
        }
        Ok(out)
    }

    // ----- conjugation ---------------------------------------------------------

    /// Hermitian transpose of a single-leg element: reverse each monomial
    /// (momenta to the left of positions), conjugate the coefficient, and
    /// re-reduce to normal order. Positions, momenta, and the deformation
    /// parameter are self-adjoint.
    pub fn transpose(&self) -> Result<Self> {
        self.expect_legs(1)?;
        let mut out = self.shape_like(self.deg_cap);
        for (k, c) in &self.terms {
            let mut xs = [0u16; 4];
            let mut ps = [0u16; 4];
            for mu in 0..4 {
                xs[mu] = k[idx_x(0, mu)];
                ps[mu] = k[idx_p(0, mu)];
            }
            let p_el = Self::monomial(0, [0; 4], ps, Scalar::one(), self.h_order, &self.metric);
            let x_el =
                Self::monomial(k[0] as u32, xs, [0; 4], c.conj(), self.h_order, &self.metric);
            let prod = p_el.normal_product(&x_el)?;
            out = out.add(&prod)?;
        }
        Ok(out)
    }

    /// Whether the element equals its Hermitian transpose.
    pub fn is_hermitian(&self) -> Result<bool> {
        Ok(self.transpose()? == *self)
    }

    // ----- inspection -----------------------------------------------------------

    /// Iterate raw `(key, coefficient)` pairs; key layout
    /// `[h, leg0: x0..x3 p0..p3, …]`.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Scalar)> {
        self.terms.iter()
    }

    /// Extract one leg of one raw key as `(xs, ps)`.
    pub fn key_leg(key: &[u16], leg: usize) -> ([u16; 4], [u16; 4]) {
        let mut xs = [0u16; 4];
        let mut ps = [0u16; 4];
        for mu in 0..4 {
            xs[mu] = key[idx_x(leg, mu)];
            ps[mu] = key[idx_p(leg, mu)];
        }
        (xs, ps)
    }

    /// Lowest deformation power with a nonzero term, if any.
    pub fn lowest_h_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k[0] as u32).min()
    }

    /// Ultrametric size `2^{-n}` where `n` is the lowest deformation power;
    /// zero for the zero element.
    pub fn ultra_norm(&self) -> f64 {
        match self.lowest_h_degree() {
            None => 0.0,
            Some(n) => 0.5f64.powi(n as i32),
        }
    }

    /// JSON document listing explicit (x-exponents, p-exponents, coefficient)
    /// triples for a single-leg element; the coefficient is the list of
    /// deformation-order slices.
    pub fn to_json_value(&self) -> Result<serde_json::Value> {
        self.expect_legs(1)?;
        use serde_json::{json, Map, Value};
        // Group by (x, p) so each triple carries its full coefficient series.
        let mut grouped: BTreeMap<([u16; 4], [u16; 4]), Vec<(u16, Scalar)>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let (xs, ps) = Self::key_leg(k, 0);
            grouped.entry((xs, ps)).or_default().push((k[0], c.clone()));
        }
        let mut triples = Vec::new();
        for ((xs, ps), mut slices) in grouped {
            slices.sort_by_key(|(h, _)| *h);
            let coeff: Vec<Value> = slices
                .into_iter()
                .map(|(h, c)| {
                    json!({
                        "h": h,
                        "re": c.re().to_string(),
                        "im": c.im().to_string(),
                    })
                })
                .collect();
            let mut m = Map::new();
            m.insert("x".into(), json!(xs.to_vec()));
            m.insert("p".into(), json!(ps.to_vec()));
            m.insert("coeff".into(), Value::Array(coeff));
            triples.push(Value::Object(m));
        }
        Ok(json!({
            "h_order": self.h_order,
            "metric": self.metric.to_string(),
            "terms": triples,
        }))
    }
}

impl PartialEq for NormalOrdered {
    fn eq(&self, other: &Self) -> bool {
        self.legs == other.legs
            && self.h_order == other.h_order
            && self.metric == other.metric
            && self.terms == other.terms
    }
}

impl Eq for NormalOrdered {}

// ----- display -------------------------------------------------------------

/// Render one leg's factors, e.g. `x1^2*p0`; empty when the leg is identity.
fn leg_factors(key: &[u16], leg: usize) -> String {
    let mut parts = Vec::new();
    for mu in 0..4 {
        let e = key[idx_x(leg, mu)];
        if e == 1 {
            parts.push(format!("x{mu}"));
        } else if e > 1 {
            parts.push(format!("x{mu}^{e}"));
        }
    }
    for mu in 0..4 {
        let e = key[idx_p(leg, mu)];
        if e == 1 {
            parts.push(format!("p{mu}"));
        } else if e > 1 {
            parts.push(format!("p{mu}^{e}"));
        }
    }
    parts.join("*")
}

impl fmt::Display for NormalOrdered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            // Split a pure-negative coefficient into sign and magnitude so
            // sums render as `a - b` instead of `a + (-1)*b`.
            let (neg, mag) = if c.is_real() && c.re() < &BigRational::zero() {
                (true, -c)
            } else if c.re().is_zero() && c.im() < &BigRational::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if key[0] == 1 {
                factors.push("h".to_string());
            } else if key[0] > 1 {
                factors.push(format!("h^{}", key[0]));
            }
            for leg in 0..self.legs as usize {
                let s = leg_factors(key, leg);
                if self.legs == 1 {
                    if !s.is_empty() {
                        factors.push(s);
                    }
                } else {
                    factors.push(if s.is_empty() { "1".into() } else { format!("({s})") });
                }
            }
            let body = if self.legs > 1 {
                // join legs with the tensor separator, scalars in front
                let legs_start = factors.len() - self.legs as usize;
                let head = factors[..legs_start].join("*");
                let tail = factors[legs_start..].join(" ⊗ ");
                if head.is_empty() {
                    tail
                } else {
                    format!("{head}*{tail}")
                }
            } else {
                factors.join("*")
            };
            if body.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}
