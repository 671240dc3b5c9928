use crate::error::{Result, SeriesError};
use crate::scalar::Scalar;
use crate::varset::VarSet;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A truncated power series in `h` over ℚ(ı) with a declared variable
/// alphabet.
///
/// Invariants maintained by every constructor and operation:
///
/// * no stored coefficient is zero;
/// * every stored `h`-exponent lies in `0..=h_order`;
/// * non-Laurent variable exponents are never negative;
/// * when `deg_cap = Some(c)`, every stored term has total momentum degree
///   (sum of non-Laurent variable exponents) at most `c`.
///
/// Exponent-key layout: slot 0 is the `h` exponent, slot `i+1` is the
/// exponent of `vars[i]`.
///
/// Binary operations require equal truncation orders (an explicit
/// [`TruncSeries::truncate_to`] is the only way to change order downward;
/// [`TruncSeries::mul_h`] is the only way to raise it). Variable alphabets
/// are merged automatically. Equality compares the mathematical content on
/// the merged alphabet together with the truncation order; the degree cap is
/// bookkeeping, not content.
#[derive(Debug, Clone)]
pub struct TruncSeries {
    vars: Arc<VarSet>,
    h_order: u32,
    deg_cap: Option<u32>,
    terms: BTreeMap<Vec<i32>, Scalar>,
}

impl TruncSeries {
    // ---------------------------------------------------------------- basics

    pub fn zero(vars: &Arc<VarSet>, h_order: u32) -> Self {
        TruncSeries { vars: vars.clone(), h_order, deg_cap: None, terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VarSet>, h_order: u32) -> Self {
        Self::constant(vars, h_order, Scalar::one())
    }

    pub fn constant(vars: &Arc<VarSet>, h_order: u32, c: Scalar) -> Self {
        let mut s = Self::zero(vars, h_order);
        if !c.is_zero() {
            s.terms.insert(vec![0; vars.len() + 1], c);
        }
        s
    }

    /// The monomial `h^1`. Zero series if the order is 0.
    pub fn h(vars: &Arc<VarSet>, h_order: u32) -> Self {
        Self::h_power(vars, h_order, 1)
    }

    /// `h^k`; truncates to zero when `k > h_order`.
    pub fn h_power(vars: &Arc<VarSet>, h_order: u32, k: u32) -> Self {
        let mut s = Self::zero(vars, h_order);
        if k <= h_order {
            let mut key = vec![0; vars.len() + 1];
            key[0] = k as i32;
            s.terms.insert(key, Scalar::one());
        }
        s
    }

    /// The variable `name` to the first power.
    pub fn var(vars: &Arc<VarSet>, h_order: u32, name: &str) -> Result<Self> {
        Self::monomial(vars, h_order, 0, &[(name, 1)], Scalar::one())
    }

    /// `c · h^h_pow · Π name^exp`. Negative exponents require Laurent-marked
    /// variables. Truncates quietly if `h_pow` exceeds the order.
    pub fn monomial(
        vars: &Arc<VarSet>,
        h_order: u32,
        h_pow: u32,
        exps: &[(&str, i32)],
        c: Scalar,
    ) -> Result<Self> {
        let mut key = vec![0; vars.len() + 1];
        key[0] = h_pow as i32;
        for (name, e) in exps {
            let idx = vars
                .index_of(name)
                .ok_or_else(|| SeriesError::UnknownVariable((*name).into()))?;
            if *e < 0 && !vars.is_laurent(idx) {
                return Err(SeriesError::NegativeExponent((*name).into()));
            }
            key[idx + 1] += e;
            if key[idx + 1] < 0 && !vars.is_laurent(idx) {
                return Err(SeriesError::NegativeExponent((*name).into()));
            }
        }
        let mut s = Self::zero(vars, h_order);
        if !c.is_zero() && h_pow <= h_order {
            s.terms.insert(key, c);
        }
        Ok(s)
    }

    /// Returns the same series with a (possibly different) momentum-degree
    /// cap; terms over the new cap are truncated away.
    pub fn with_deg_cap(mut self, cap: Option<u32>) -> Self {
        if let Some(c) = cap {
            let vars = self.vars.clone();
            self.terms.retain(|k, _| Self::momentum_degree_of(&vars, k) <= c);
        }
        self.deg_cap = cap;
        self
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn h_order(&self) -> u32 {
        self.h_order
    }

    pub fn deg_cap(&self) -> Option<u32> {
        self.deg_cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Scalar)> {
        self.terms.iter()
    }

    /// Coefficient of `h^h_pow · Π name^exp` (zero when absent).
    pub fn coefficient(&self, h_pow: u32, exps: &[(&str, i32)]) -> Result<Scalar> {
        let mut key = vec![0; self.vars.len() + 1];
        key[0] = h_pow as i32;
        for (name, e) in exps {
            let idx = self
                .vars
                .index_of(name)
                .ok_or_else(|| SeriesError::UnknownVariable((*name).into()))?;
            key[idx + 1] = *e;
        }
        Ok(self.terms.get(&key).cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn constant_term(&self) -> Scalar {
        let key = vec![0; self.vars.len() + 1];
        self.terms.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The coefficient of `h^k`, as a series of order 0 in the same alphabet.
    pub fn coefficient_of_h(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.vars, 0);
        out.deg_cap = self.deg_cap;
        for (key, c) in &self.terms {
            if key[0] == k as i32 {
                let mut nk = key.clone();
                nk[0] = 0;
                out.terms.insert(nk, c.clone());
            }
        }
        out
    }

    fn momentum_degree_of(vars: &VarSet, key: &[i32]) -> u32 {
        let mut d = 0i64;
        for (i, e) in key[1..].iter().enumerate() {
            if !vars.is_laurent(i) {
                d += *e as i64;
            }
        }
        d as u32
    }

    fn one_like(&self) -> Self {
        let mut s = Self::one(&self.vars, self.h_order);
        s.deg_cap = self.deg_cap;
        s
    }

    fn zero_like(&self) -> Self {
        let mut s = Self::zero(&self.vars, self.h_order);
        s.deg_cap = self.deg_cap;
        s
    }

    fn admit(&self, key: &[i32]) -> bool {
        if key[0] > self.h_order as i32 {
            return false;
        }
        match self.deg_cap {
            Some(c) => Self::momentum_degree_of(&self.vars, key) <= c,
            None => true,
        }
    }

    fn insert_acc(&mut self, key: Vec<i32>, c: Scalar) {
        if c.is_zero() || !self.admit(&key) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    // ------------------------------------------------------------ alignment

    fn combined_cap(a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        }
    }

    /// Re-expresses the series over a superset alphabet.
    pub fn align_to(&self, vars: &Arc<VarSet>) -> Result<Self> {
        if self.vars == *vars || Arc::ptr_eq(&self.vars, vars) {
            let mut s = self.clone();
            s.vars = vars.clone();
            return Ok(s);
        }
        let map: Vec<usize> = self
            .vars
            .vars()
            .iter()
            .map(|v| {
                let idx = vars
                    .index_of(&v.name)
                    .ok_or_else(|| SeriesError::UnknownVariable(v.name.clone()))?;
                if vars.is_laurent(idx) != v.laurent {
                    return Err(SeriesError::Invalid(format!(
                        "variable `{}` changes invertibility under alignment",
                        v.name
                    )));
                }
                Ok(idx)
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(vars, self.h_order);
        out.deg_cap = self.deg_cap;
        for (key, c) in &self.terms {
            let mut nk = vec![0; vars.len() + 1];
            nk[0] = key[0];
            for (i, e) in key[1..].iter().enumerate() {
                nk[map[i] + 1] = *e;
            }
            out.terms.insert(nk, c.clone());
        }
        Ok(out)
    }

    fn aligned_pair(&self, rhs: &Self) -> Result<(Self, Self)> {
        if self.h_order != rhs.h_order {
            return Err(SeriesError::OrderMismatch { left: self.h_order, right: rhs.h_order });
        }
        let cap = Self::combined_cap(self.deg_cap, rhs.deg_cap);
        if self.vars == rhs.vars {
            let mut a = self.clone();
            let mut b = rhs.clone();
            a.deg_cap = cap;
            b.deg_cap = cap;
            return Ok((a, b));
        }
        let (u, _, _) = VarSet::union(&self.vars, &rhs.vars)?;
        let mut a = self.align_to(&u)?;
        let mut b = rhs.align_to(&u)?;
        a.deg_cap = cap;
        b.deg_cap = cap;
        Ok((a, b))
    }

    /// Renames variables (flags are preserved). Unmentioned variables keep
    /// their names; renaming onto an existing distinct name is an error.
    pub fn rename(&self, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut new_names: Vec<(String, bool)> = Vec::with_capacity(self.vars.len());
        for v in self.vars.vars() {
            let name = pairs
                .iter()
                .find(|(from, _)| *from == v.name)
                .map(|(_, to)| to.to_string())
                .unwrap_or_else(|| v.name.clone());
            new_names.push((name, v.laurent));
        }
        let new_vars = VarSet::new(new_names.clone())?;
        let mut out = Self::zero(&new_vars, self.h_order);
        out.deg_cap = self.deg_cap;
        for (key, c) in &self.terms {
            let mut nk = vec![0; new_vars.len() + 1];
            nk[0] = key[0];
            for (i, e) in key[1..].iter().enumerate() {
                let idx = new_vars
                    .index_of(&new_names[i].0)
                    .expect("renamed variable present");
                nk[idx + 1] = *e;
            }
            out.terms.insert(nk, c.clone());
        }
        Ok(out)
    }

    // ----------------------------------------------------------- arithmetic

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let (mut a, b) = self.aligned_pair(rhs)?;
        for (k, c) in b.terms {
            a.insert_acc(k, c);
        }
        Ok(a)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = -&*c;
        }
        s
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return self.zero_like();
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c * s;
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = self.aligned_pair(rhs)?;
        let mut out = a.zero_like();
        let mut key = vec![0i32; a.vars.len() + 1];
        for (ka, ca) in &a.terms {
            // Terms of `b` beyond the remaining h budget can never land.
            let budget = a.h_order as i32 - ka[0];
            for (kb, cb) in &b.terms {
                if kb[0] > budget {
                    continue;
                }
                for i in 0..key.len() {
                    key[i] = ka[i] + kb[i];
                }
                if !out.admit(&key) {
                    continue;
                }
                out.insert_acc(key.clone(), ca * cb);
            }
        }
        Ok(out)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.pow_int(-n);
        }
        let mut result = self.one_like();
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Largest number of times a nilpotent element can be multiplied with
    /// itself before vanishing under the active truncation.
    fn nilpotency_bound(&self) -> u32 {
        self.h_order + self.deg_cap.unwrap_or(0) + 1
    }

    /// Checks that every term carries positive `h`-degree or (when a degree
    /// cap is active) positive momentum degree — the condition under which
    /// geometric/exponential series terminate.
    fn check_nilpotent(&self, what: &str) -> Result<()> {
        for key in self.terms.keys() {
            let momentum_pos = Self::momentum_degree_of(&self.vars, key) > 0;
            if key[0] > 0 || (momentum_pos && self.deg_cap.is_some()) {
                continue;
            }
            return Err(SeriesError::NotNilpotent(format!(
                "{what}: term with h-degree 0 and {} cannot vanish under truncation",
                if momentum_pos { "no momentum-degree cap" } else { "momentum degree 0" }
            )));
        }
        Ok(())
    }

    /// Multiplicative inverse.
    ///
    /// The `h^0` part must be a unit of the coefficient ring: a single term
    /// of momentum degree zero (a scalar, possibly times a Laurent
    /// monomial). Everything else is handled by the geometric series, which
    /// terminates because the remainder is nilpotent under truncation.
    pub fn invert(&self) -> Result<Self> {
        let mut lead: Option<(Vec<i32>, Scalar)> = None;
        for (key, c) in &self.terms {
            if key[0] == 0 && Self::momentum_degree_of(&self.vars, key) == 0 {
                if lead.is_some() {
                    return Err(SeriesError::NotInvertible(
                        "h⁰ part is not a single unit monomial".into(),
                    ));
                }
                lead = Some((key.clone(), c.clone()));
            }
        }
        let (lkey, lc) = lead.ok_or_else(|| {
            SeriesError::NotInvertible("no unit constant term at h⁰".into())
        })?;
        let mut inv_key = lkey.clone();
        for e in inv_key.iter_mut() {
            *e = -*e;
        }
        let mut lead_inv = self.zero_like();
        lead_inv.terms.insert(inv_key, lc.inv()?);

        // u = 1 − lead⁻¹·a, so a⁻¹ = (Σ_j u^j)·lead⁻¹.
        let u = self.one_like().sub(&lead_inv.mul(self)?)?;
        u.check_nilpotent("invert")?;
        let mut acc = self.one_like();
        let mut power = u.clone();
        for _ in 0..self.nilpotency_bound() {
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
            power = power.mul(&u)?;
        }
        debug_assert!(power.is_zero());
        acc.mul(&lead_inv)
    }

    /// `a^β` for rational β via the binomial series
    /// `Σ_m β(β−1)…(β−m+1)/m! · (a−1)^m`.
    ///
    /// Requires constant term exactly 1 (and nothing else at `h⁰` momentum
    /// degree 0). For integer β this agrees with `pow_int`/`invert`.
    pub fn pow_fractional(&self, beta: &BigRational) -> Result<Self> {
        for (key, c) in &self.terms {
            if key[0] == 0 && Self::momentum_degree_of(&self.vars, key) == 0 {
                let is_plain_one = key.iter().all(|e| *e == 0) && c.is_one();
                if !is_plain_one {
                    return Err(SeriesError::ConstantNotOne(format!(
                        "found {c} at a degree-0 monomial"
                    )));
                }
            }
        }
        if self.constant_term() != Scalar::one() {
            return Err(SeriesError::ConstantNotOne("missing constant term".into()));
        }
        let u = self.sub(&self.one_like())?;
        u.check_nilpotent("pow_fractional")?;
        let mut acc = self.one_like();
        let mut power = u.clone();
        let mut coeff = BigRational::one();
        let mut m = BigRational::zero();
        for _ in 0..self.nilpotency_bound() {
            if power.is_zero() {
                break;
            }
            m += BigRational::one();
            coeff = coeff * (beta - (&m - BigRational::one())) / &m;
            acc = acc.add(&power.scalar_mul(&Scalar::from_rational(coeff.clone())))?;
            power = power.mul(&u)?;
        }
        Ok(acc)
    }

    /// `exp(a)` for nilpotent `a` (each term must have positive `h`-degree,
    /// or positive momentum degree under an active cap).
    pub fn exp(&self) -> Result<Self> {
        self.check_nilpotent("exp")?;
        let mut acc = self.one_like();
        let mut power = self.clone();
        let mut factorial = BigRational::one();
        let mut m = BigRational::one();
        for _ in 0..self.nilpotency_bound() {
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scalar_mul(&Scalar::from_rational(
                BigRational::one() / &factorial,
            )))?;
            power = power.mul(self)?;
            m += BigRational::one();
            factorial *= &m;
        }
        Ok(acc)
    }

    /// `log(1 + a)` for nilpotent `a`; inverse of `exp` in the sense that
    /// `log1p(exp(u) − 1) = u` and `exp(log1p(u)) = 1 + u`.
    pub fn log1p(&self) -> Result<Self> {
        self.check_nilpotent("log1p")?;
        let mut acc = self.zero_like();
        let mut power = self.clone();
        let mut m = 1i64;
        for _ in 0..self.nilpotency_bound() {
            if power.is_zero() {
                break;
            }
            let sign = if m % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scalar_mul(&Scalar::rational(sign, m)))?;
            power = power.mul(self)?;
            m += 1;
        }
        Ok(acc)
    }

    // --------------------------------------------------------- substitution

    /// Substitutes series for variables. Unbound variables persist (they must
    /// not collide in flags with the binding alphabets). Negative exponents
    /// of a bound Laurent symbol invert the binding, which must therefore be
    /// a unit.
    pub fn substitute(&self, bindings: &[(&str, &TruncSeries)]) -> Result<Self> {
        for (name, b) in bindings {
            if self.vars.index_of(name).is_none() {
                return Err(SeriesError::UnknownVariable((*name).into()));
            }
            if b.h_order != self.h_order {
                return Err(SeriesError::OrderMismatch {
                    left: self.h_order,
                    right: b.h_order,
                });
            }
        }
        for i in 1..bindings.len() {
            if bindings[..i].iter().any(|(n, _)| *n == bindings[i].0) {
                return Err(SeriesError::Invalid(format!(
                    "duplicate binding for `{}`",
                    bindings[i].0
                )));
            }
        }

        // Result alphabet: unbound variables of self, unioned with every
        // binding's alphabet.
        let unbound: Vec<(String, bool)> = self
            .vars
            .vars()
            .iter()
            .filter(|v| bindings.iter().all(|(n, _)| *n != v.name))
            .map(|v| (v.name.clone(), v.laurent))
            .collect();
        let mut result_vars = VarSet::new(unbound)?;
        for (_, b) in bindings {
            let (u, _, _) = VarSet::union(&result_vars, &b.vars)?;
            result_vars = u;
        }

        let cap = bindings
            .iter()
            .fold(self.deg_cap, |acc, (_, b)| Self::combined_cap(acc, b.deg_cap));
        let aligned: Vec<TruncSeries> = bindings
            .iter()
            .map(|(_, b)| {
                let mut s = b.align_to(&result_vars)?;
                s.deg_cap = cap;
                Ok(s)
            })
            .collect::<Result<_>>()?;

        let mut power_cache: BTreeMap<(usize, i32), TruncSeries> = BTreeMap::new();
        let mut out = TruncSeries::zero(&result_vars, self.h_order).with_deg_cap(cap);

        for (key, c) in &self.terms {
            let mut term = TruncSeries::constant(&result_vars, self.h_order, c.clone())
                .with_deg_cap(cap);
            // carry over the h power
            if key[0] > 0 {
                if key[0] > self.h_order as i32 {
                    continue;
                }
                let h = TruncSeries::h_power(&result_vars, self.h_order, key[0] as u32)
                    .with_deg_cap(cap);
                term = term.mul(&h)?;
            }
            for (i, e) in key[1..].iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let name = self.vars.name(i);
                match bindings.iter().position(|(n, _)| *n == name) {
                    Some(bi) => {
                        let pw = match power_cache.get(&(bi, *e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = aligned[bi].pow_int(*e as i64).map_err(|err| {
                                    if *e < 0 {
                                        SeriesError::NonUnitBinding(name.into())
                                    } else {
                                        err
                                    }
                                })?;
                                power_cache.insert((bi, *e), p.clone());
                                p
                            }
                        };
                        term = term.mul(&pw)?;
                    }
                    None => {
                        let mono = TruncSeries::monomial(
                            &result_vars,
                            self.h_order,
                            0,
                            &[(name, *e)],
                            Scalar::one(),
                        )?
                        .with_deg_cap(cap);
                        term = term.mul(&mono)?;
                    }
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Substitutes exact scalar values for variables (a special case of
    /// [`TruncSeries::substitute`] that keeps the alphabet unchanged minus
    /// the bound symbols). A zero value for a Laurent symbol is an error.
    pub fn eval_vars(&self, values: &[(&str, &Scalar)]) -> Result<Self> {
        let consts: Vec<(&str, TruncSeries)> = values
            .iter()
            .map(|(n, v)| {
                let idx = self
                    .vars
                    .index_of(n)
                    .ok_or_else(|| SeriesError::UnknownVariable((*n).into()))?;
                if self.vars.is_laurent(idx) && v.is_zero() {
                    return Err(SeriesError::NonUnitBinding((*n).into()));
                }
                let empty = VarSet::new(Vec::<(String, bool)>::new())?;
                Ok((*n, TruncSeries::constant(&empty, self.h_order, (*v).clone())))
            })
            .collect::<Result<_>>()?;
        let borrow: Vec<(&str, &TruncSeries)> =
            consts.iter().map(|(n, s)| (*n, s)).collect();
        self.substitute(&borrow)
    }

    // --------------------------------------------------------------- calculus

    /// Formal partial derivative. Monomial rule, valid for Laurent exponents
    /// as well (`∂(v⁻²)/∂v = −2v⁻³`).
    pub fn derivative(&self, name: &str) -> Result<Self> {
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.into()))?;
        let mut out = self.zero_like();
        for (key, c) in &self.terms {
            let e = key[idx + 1];
            if e == 0 {
                continue;
            }
            let mut nk = key.clone();
            nk[idx + 1] -= 1;
            out.insert_acc(nk, &c.clone() * &Scalar::from_int(e as i64));
        }
        Ok(out)
    }

    /// Formal antiderivative with zero constant of integration
    /// (`v^e ↦ v^{e+1}/(e+1)`). Rejected for Laurent symbols, whose `v⁻¹`
    /// term has no Laurent-polynomial antiderivative.
    pub fn antiderivative(&self, name: &str) -> Result<Self> {
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.into()))?;
        if self.vars.is_laurent(idx) {
            return Err(SeriesError::Invalid(format!(
                "antiderivative in invertible symbol `{name}`"
            )));
        }
        let mut out = self.zero_like();
        for (key, c) in &self.terms {
            let e = key[idx + 1];
            let mut nk = key.clone();
            nk[idx + 1] += 1;
            out.insert_acc(nk, &c.clone() * &Scalar::rational(1, (e + 1) as i64));
        }
        Ok(out)
    }

    // --------------------------------------------------------------- h moves

    /// Division by `h^k`. Every term must carry `h`-degree ≥ `k`; the result
    /// is exact to order `h_order − k` and its order field says so.
    pub fn div_h(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k > self.h_order {
            return Err(SeriesError::Invalid(format!(
                "cannot divide order-{} series by h^{k}",
                self.h_order
            )));
        }
        let mut out = TruncSeries::zero(&self.vars, self.h_order - k);
        out.deg_cap = self.deg_cap;
        for (key, c) in &self.terms {
            if (key[0] as u32) < k {
                return Err(SeriesError::HDivision { power: k, found: key[0] as u32 });
            }
            let mut nk = key.clone();
            nk[0] -= k as i32;
            out.terms.insert(nk, c.clone());
        }
        Ok(out)
    }

    /// Multiplication by `h^k`; the result is exact to order `h_order + k`.
    pub fn mul_h(&self, k: u32) -> Self {
        let mut out = TruncSeries::zero(&self.vars, self.h_order + k);
        out.deg_cap = self.deg_cap;
        for (key, c) in &self.terms {
            let mut nk = key.clone();
            nk[0] += k as i32;
            out.terms.insert(nk, c.clone());
        }
        out
    }

    /// Forgets precision down to order `m ≤ h_order`.
    pub fn truncate_to(&self, m: u32) -> Result<Self> {
        if m > self.h_order {
            return Err(SeriesError::Invalid(format!(
                "cannot extend truncation order {} to {m}",
                self.h_order
            )));
        }
        let mut out = self.clone();
        out.h_order = m;
        out.terms.retain(|k, _| k[0] <= m as i32);
        Ok(out)
    }

    // ------------------------------------------------------------- analysis

    /// Lowest `h`-degree `n(a)`; `None` for the zero series.
    pub fn lowest_h_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k[0] as u32).min()
    }

    /// The `h`-adic ultra-norm `2^{−n(a)}` (`0` for zero). Exact in `f64`.
    pub fn ultra_norm(&self) -> f64 {
        match self.lowest_h_degree() {
            None => 0.0,
            Some(n) => 2f64.powi(-(n as i32)),
        }
    }

    /// Complex-conjugates every coefficient (ı ↦ −ı).
    pub fn conj(&self) -> Self {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = c.conj();
        }
        s
    }
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        if self.h_order != other.h_order {
            return false;
        }
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        match VarSet::union(&self.vars, &other.vars) {
            Ok((u, _, _)) => match (self.align_to(&u), other.align_to(&u)) {
                (Ok(a), Ok(b)) => a.terms == b.terms,
                _ => false,
            },
            Err(_) => false,
        }
    }
}

impl Eq for TruncSeries {}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if key[0] == 1 {
                factors.push("h".into());
            } else if key[0] > 1 {
                factors.push(format!("h^{}", key[0]));
            }
            for (i, e) in key[1..].iter().enumerate() {
                match *e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", c, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn vars() -> Arc<VarSet> {
        VarSet::standard(&["P0", "P1"], None).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn monomial_rejects_negative_on_plain_symbol() {
        let v = vars();
        assert!(matches!(
            TruncSeries::monomial(&v, 4, 0, &[("P0", -1)], Scalar::one()),
            Err(SeriesError::NegativeExponent(_))
        ));
    }

    #[test]
    fn mul_truncates_by_order() {
        let v = vars();
        // (1 + h·P0)·(1 + h·P0) at order 1 keeps no h² term
        let a = TruncSeries::one(&v, 1)
            .add(&TruncSeries::monomial(&v, 1, 1, &[("P0", 1)], Scalar::one()).unwrap())
            .unwrap();
        let sq = a.mul(&a).unwrap();
        let two_h_p0 = TruncSeries::monomial(&v, 1, 1, &[("P0", 1)], Scalar::from_int(2)).unwrap();
        assert_eq!(sq, TruncSeries::one(&v, 1).add(&two_h_p0).unwrap());
    }

    #[test]
    fn invert_geometric() {
        let v = vars();
        let n = 6;
        // (1 − h·P0)⁻¹ = Σ h^k·P0^k
        let a = TruncSeries::one(&v, n)
            .sub(&TruncSeries::monomial(&v, n, 1, &[("P0", 1)], Scalar::one()).unwrap())
            .unwrap();
        let inv = a.invert().unwrap();
        let mut expect = TruncSeries::zero(&v, n);
        for k in 0..=n {
            expect = expect
                .add(&TruncSeries::monomial(&v, n, k, &[("P0", k as i32)], Scalar::one()).unwrap())
                .unwrap();
        }
        assert_eq!(inv, expect);
        assert_eq!(a.mul(&inv).unwrap(), TruncSeries::one(&v, n));
    }

    #[test]
    fn invert_requires_unit_h0_part() {
        let v = vars();
        let p = TruncSeries::var(&v, 4, "P0").unwrap();
        assert!(p.invert().is_err());
        let h = TruncSeries::h(&v, 4);
        assert!(h.invert().is_err());
        // 1 + P0 at h⁰ with no cap: geometric series would not terminate
        let a = TruncSeries::one(&v, 4).add(&p).unwrap();
        assert!(matches!(a.invert(), Err(SeriesError::NotNilpotent(_))));
    }

    #[test]
    fn laurent_monomial_inverts_exactly() {
        let v = VarSet::standard(&["P1"], Some("Pi0")).unwrap();
        let pi = TruncSeries::var(&v, 0, "Pi0").unwrap();
        let inv = pi.invert().unwrap();
        assert_eq!(
            inv,
            TruncSeries::monomial(&v, 0, 0, &[("Pi0", -1)], Scalar::one()).unwrap()
        );
        assert_eq!(pi.mul(&inv).unwrap(), TruncSeries::one(&v, 0));
    }

    #[test]
    fn deg_cap_makes_momentum_series_nilpotent() {
        let v = VarSet::standard(&["P1"], Some("Pi0")).unwrap();
        // (1 + P1·Pi0⁻¹)⁻¹ exact under a momentum cap
        let t = TruncSeries::monomial(&v, 0, 0, &[("P1", 1), ("Pi0", -1)], Scalar::one())
            .unwrap()
            .with_deg_cap(Some(4));
        let a = TruncSeries::one(&v, 0).with_deg_cap(Some(4)).add(&t).unwrap();
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), TruncSeries::one(&v, 0).with_deg_cap(Some(4)));
        // alternating geometric signs
        assert_eq!(
            inv.coefficient(0, &[("P1", 3), ("Pi0", -3)]).unwrap(),
            Scalar::from_int(-1)
        );
    }

    #[test]
    fn pow_fractional_binomial() {
        let v = vars();
        let n = 3;
        // (1 − 2h·P0)^(−1/2) = 1 + h·P0 + (3/2)h²·P0² + (5/2)h³·P0³
        let a = TruncSeries::one(&v, n)
            .sub(&TruncSeries::monomial(&v, n, 1, &[("P0", 1)], Scalar::from_int(2)).unwrap())
            .unwrap();
        let r = a.pow_fractional(&q(-1, 2)).unwrap();
        assert_eq!(r.coefficient(1, &[("P0", 1)]).unwrap(), Scalar::one());
        assert_eq!(r.coefficient(2, &[("P0", 2)]).unwrap(), Scalar::rational(3, 2));
        assert_eq!(r.coefficient(3, &[("P0", 3)]).unwrap(), Scalar::rational(5, 2));
    }

    #[test]
    fn exp_log_round_trip() {
        let v = vars();
        let u = TruncSeries::monomial(&v, 5, 1, &[("P0", 1)], Scalar::i())
            .unwrap()
            .add(&TruncSeries::monomial(&v, 5, 2, &[("P1", 1)], Scalar::rational(1, 3)).unwrap())
            .unwrap();
        let e = u.exp().unwrap();
        let back = e.sub(&TruncSeries::one(&v, 5)).unwrap().log1p().unwrap();
        assert_eq!(back, u);
        let fwd = u.log1p().unwrap().exp().unwrap();
        assert_eq!(fwd, TruncSeries::one(&v, 5).add(&u).unwrap());
    }

    #[test]
    fn substitute_simple() {
        let v = vars();
        // f = P0², bind P0 ↦ h + P1
        let f = TruncSeries::monomial(&v, 4, 0, &[("P0", 2)], Scalar::one()).unwrap();
        let b = TruncSeries::h(&v, 4)
            .add(&TruncSeries::var(&v, 4, "P1").unwrap())
            .unwrap();
        let g = f.substitute(&[("P0", &b)]).unwrap();
        assert_eq!(g.coefficient(0, &[("P1", 2)]).unwrap(), Scalar::one());
        assert_eq!(g.coefficient(1, &[("P1", 1)]).unwrap(), Scalar::from_int(2));
        assert_eq!(g.coefficient(2, &[]).unwrap(), Scalar::one());
    }

    #[test]
    fn laurent_negative_power_binding_must_be_unit() {
        let v = VarSet::standard(&[], Some("Pi0")).unwrap();
        let f = TruncSeries::monomial(&v, 4, 0, &[("Pi0", -1)], Scalar::one()).unwrap();
        let bad = TruncSeries::h(&v, 4);
        assert!(f.substitute(&[("Pi0", &bad)]).is_err());
        let good = TruncSeries::one(&v, 4)
            .add(&TruncSeries::h(&v, 4))
            .unwrap();
        let g = f.substitute(&[("Pi0", &good)]).unwrap();
        // (1+h)⁻¹ = 1 − h + h² − …
        assert_eq!(g.coefficient(2, &[]).unwrap(), Scalar::one());
        assert_eq!(g.coefficient(3, &[]).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn derivative_and_antiderivative() {
        let v = vars();
        let f = TruncSeries::monomial(&v, 4, 0, &[("P0", 3)], Scalar::rational(1, 2)).unwrap();
        let df = f.derivative("P0").unwrap();
        assert_eq!(df.coefficient(0, &[("P0", 2)]).unwrap(), Scalar::rational(3, 2));
        assert_eq!(df.antiderivative("P0").unwrap(), f);
    }

    #[test]
    fn h_division_tracks_order() {
        let v = vars();
        let a = TruncSeries::monomial(&v, 6, 2, &[("P0", 1)], Scalar::one()).unwrap();
        let d = a.div_h(2).unwrap();
        assert_eq!(d.h_order(), 4);
        assert_eq!(d.coefficient(0, &[("P0", 1)]).unwrap(), Scalar::one());
        assert!(TruncSeries::one(&v, 6).div_h(1).is_err());
        assert_eq!(d.mul_h(2).h_order(), 6);
    }

    #[test]
    fn ultra_norm_values() {
        let v = vars();
        assert_eq!(TruncSeries::zero(&v, 4).ultra_norm(), 0.0);
        assert_eq!(TruncSeries::one(&v, 4).ultra_norm(), 1.0);
        assert_eq!(TruncSeries::h_power(&v, 4, 3).ultra_norm(), 0.125);
    }

    #[test]
    fn equality_across_alphabets() {
        let va = VarSet::standard(&["P0"], None).unwrap();
        let vb = VarSet::standard(&["P0", "P1"], None).unwrap();
        let a = TruncSeries::var(&va, 4, "P0").unwrap();
        let b = TruncSeries::var(&vb, 4, "P0").unwrap();
        assert_eq!(a, b);
        let c = TruncSeries::var(&vb, 5, "P0").unwrap();
        assert_ne!(a, c); // same content, different order ⇒ different objects
    }
}
