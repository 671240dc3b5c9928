//! Classical bracket calculus: wedge products over an abstract Lie basis and
//! the Schouten bracket of bivectors.
//!
//! This layer is purely symbolic — basis elements are names, brackets come
//! from a user-supplied table of structure constants, and everything reduces
//! to canonical wedge monomials with exact complex-rational coefficients. It
//! is how the leading antisymmetric part of a quasi-triangular element gets
//! classified: a vanishing Schouten square marks a classical solution, a
//! Lorentz-invariant remainder marks the modified variant.

use std::collections::BTreeMap;

use series_core::Scalar;

use crate::error::{Result, TwistError};

/// Structure constants `[a, b] = sum c_k e_k` over named basis elements.
///
/// Brackets are stored in one orientation and antisymmetrized on lookup;
/// pairs never set are zero. `validate_jacobi` checks the whole table, and
/// [`schouten_bracket`] runs it before trusting the constants.
#[derive(Debug, Clone, Default)]
pub struct LieTable {
    syms: Vec<String>,
    brackets: BTreeMap<(String, String), Vec<(Scalar, String)>>,
}

impl LieTable {
    pub fn new(syms: &[&str]) -> Self {
        LieTable { syms: syms.iter().map(|s| s.to_string()).collect(), brackets: BTreeMap::new() }
    }

    pub fn symbols(&self) -> &[String] {
        &self.syms
    }

    fn check_sym(&self, s: &str) -> Result<()> {
        if self.syms.iter().any(|t| t == s) {
            Ok(())
        } else {
            Err(TwistError::UnknownSymbol(s.to_string()))
        }
    }

    /// Record `[a, b]`; the reversed orientation is implied.
    pub fn set_bracket(&mut self, a: &str, b: &str, rhs: &[(Scalar, &str)]) -> Result<()> {
        self.check_sym(a)?;
        self.check_sym(b)?;
        if a == b {
            return Err(TwistError::Invalid("bracket of a symbol with itself".into()));
        }
        if self.brackets.contains_key(&(b.to_string(), a.to_string())) {
            return Err(TwistError::Invalid(format!(
                "bracket [{b}, {a}] already recorded; set each pair once"
            )));
        }
        for (_, s) in rhs {
            self.check_sym(s)?;
        }
        let entry = rhs
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, s)| (c.clone(), s.to_string()))
            .collect();
        self.brackets.insert((a.to_string(), b.to_string()), entry);
        Ok(())
    }

    /// `[a, b]` as a list of `(coefficient, symbol)` pairs.
    pub fn bracket(&self, a: &str, b: &str) -> Result<Vec<(Scalar, String)>> {
        self.check_sym(a)?;
        self.check_sym(b)?;
        if a == b {
            return Ok(Vec::new());
        }
        if let Some(rhs) = self.brackets.get(&(a.to_string(), b.to_string())) {
            return Ok(rhs.clone());
        }
        if let Some(rhs) = self.brackets.get(&(b.to_string(), a.to_string())) {
            return Ok(rhs.iter().map(|(c, s)| (-c, s.clone())).collect());
        }
        Ok(Vec::new())
    }

    /// Bracket of a linear combination against a basis symbol.
    fn bracket_linear(&self, lhs: &[(Scalar, String)], b: &str) -> Result<Vec<(Scalar, String)>> {
        let mut acc: BTreeMap<String, Scalar> = BTreeMap::new();
        for (c, a) in lhs {
            for (ck, k) in self.bracket(a, b)? {
                let v = &ck * c;
                let slot = acc.entry(k).or_insert_with(Scalar::zero);
                *slot = &*slot + &v;
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(s, c)| (c, s)).collect())
    }

    /// Check `[[a,b],c] + [[b,c],a] + [[c,a],b] = 0` over every basis triple.
    pub fn validate_jacobi(&self) -> Result<()> {
        let n = self.syms.len();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (a, b, c) = (&self.syms[i], &self.syms[j], &self.syms[k]);
                    let mut acc: BTreeMap<String, Scalar> = BTreeMap::new();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let inner = self.bracket(x, y)?;
                        for (cc, s) in self.bracket_linear(&inner, z)? {
                            let slot = acc.entry(s).or_insert_with(Scalar::zero);
                            *slot = &*slot + &cc;
                        }
                    }
                    if acc.values().any(|c| !c.is_zero()) {
                        return Err(TwistError::Jacobi(format!("triple ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The Lorentz sector plus translations: rotations `M1..M3`, boosts
    /// `N1..N3`, momenta `P0..P3`, with the quantum-bracket normalization
    /// (every structure constant carries a factor `i`).
    pub fn poincare() -> LieTable {
        let mut t = LieTable::new(&[
            "M1", "M2", "M3", "N1", "N2", "N3", "P0", "P1", "P2", "P3",
        ]);
        let eps = |i: usize, j: usize, k: usize| -> i64 {
            weyl_engine::epsilon3(i, j, k)
        };
        let m = |i: usize| format!("M{i}");
        let n = |i: usize| format!("N{i}");
        let p = |i: usize| format!("P{i}");
        for i in 1..=3 {
            for j in 1..=3 {
                if i >= j {
                    continue;
                }
                // [M_i, M_j] = i eps_{ijk} M_k ; [N_i, N_j] = -i eps_{ijk} M_k
                let mut mm = Vec::new();
                let mut nn = Vec::new();
                for k in 1..=3 {
                    let e = eps(i, j, k);
                    if e != 0 {
                        mm.push((Scalar::rational_i(e, 1), m(k)));
                        nn.push((Scalar::rational_i(-e, 1), m(k)));
                    }
                }
                let mm_ref: Vec<(Scalar, &str)> =
                    mm.iter().map(|(c, s)| (c.clone(), s.as_str())).collect();
                let nn_ref: Vec<(Scalar, &str)> =
                    nn.iter().map(|(c, s)| (c.clone(), s.as_str())).collect();
                t.set_bracket(&m(i), &m(j), &mm_ref).expect("fixed table");
                t.set_bracket(&n(i), &n(j), &nn_ref).expect("fixed table");
            }
        }
        for i in 1..=3 {
            for j in 1..=3 {
                // [M_i, N_j] = i eps_{ijk} N_k
                let mut mn = Vec::new();
                for k in 1..=3 {
                    let e = eps(i, j, k);
                    if e != 0 {
                        mn.push((Scalar::rational_i(e, 1), n(k)));
                    }
                }
                let mn_ref: Vec<(Scalar, &str)> =
                    mn.iter().map(|(c, s)| (c.clone(), s.as_str())).collect();
                if !mn_ref.is_empty() {
                    t.set_bracket(&m(i), &n(j), &mn_ref).expect("fixed table");
                }
                // [M_i, P_j] = i eps_{ijk} P_k
                let mut mp = Vec::new();
                for k in 1..=3 {
                    let e = eps(i, j, k);
                    if e != 0 {
                        mp.push((Scalar::rational_i(e, 1), p(k)));
                    }
                }
                let mp_ref: Vec<(Scalar, &str)> =
                    mp.iter().map(|(c, s)| (c.clone(), s.as_str())).collect();
                if !mp_ref.is_empty() {
                    t.set_bracket(&m(i), &p(j), &mp_ref).expect("fixed table");
                }
            }
        }
        for i in 1..=3 {
            // [N_i, P_j] = -i delta_{ij} P_0 ; [N_i, P_0] = -i P_i
            t.set_bracket(&n(i), &p(i), &[(Scalar::minus_i(), "P0")]).expect("fixed table");
            t.set_bracket(&n(i), "P0", &[(Scalar::minus_i(), p(i).as_str())])
                .expect("fixed table");
        }
        t
    }

    /// The two-symbol scaling sector `{D, L00, P0}` that hosts the graded
    /// families' classical limits: `[L00, P0] = i P0`, `[D, P0] = 0`,
    /// `[D, L00] = 0`.
    pub fn scaling() -> LieTable {
        let mut t = LieTable::new(&["D", "L00", "P0"]);
        t.set_bracket("L00", "P0", &[(Scalar::i(), "P0")]).expect("fixed table");
        t
    }
}

/// A sum of wedge monomials `c · a /\ b` in canonical form (symbols ordered,
/// repeated symbols dropped).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bivector {
    terms: BTreeMap<(String, String), Scalar>,
}

impl Bivector {
    pub fn zero() -> Self {
        Bivector::default()
    }

    pub fn wedge(a: &str, b: &str, c: Scalar) -> Self {
        let mut out = Bivector::default();
        out.add_wedge(a, b, c);
        out
    }

    pub fn add_wedge(&mut self, a: &str, b: &str, c: Scalar) {
        if a == b || c.is_zero() {
            return;
        }
        let (key, coeff) = if a < b {
            ((a.to_string(), b.to_string()), c)
        } else {
            ((b.to_string(), a.to_string()), -&c)
        };
        let slot = self.terms.entry(key).or_insert_with(Scalar::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, rhs: &Bivector) -> Bivector {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_wedge(a, b, c.clone());
        }
        out
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Bivector {
        let mut out = Bivector::default();
        for ((a, b), v) in &self.terms {
            out.add_wedge(a, b, v * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&(String, String), &Scalar)> {
        self.terms.iter()
    }
}

/// A sum of wedge monomials `c · a /\ b /\ c` in canonical (sorted) form.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trivector {
    terms: BTreeMap<(String, String, String), Scalar>,
}

impl Trivector {
    pub fn zero() -> Self {
        Trivector::default()
    }

    pub fn add_wedge(&mut self, a: &str, b: &str, c: &str, coeff: Scalar) {
        if a == b || b == c || a == c || coeff.is_zero() {
            return;
        }
        // Sort the three names, tracking the permutation sign.
        let mut v = [(a, 0usize), (b, 1), (c, 2)];
        v.sort_by(|x, y| x.0.cmp(y.0));
        let perm = [v[0].1, v[1].1, v[2].1];
        let even = matches!(perm, [0, 1, 2] | [1, 2, 0] | [2, 0, 1]);
        let signed = if even { coeff } else { -&coeff };
        let key = (v[0].0.to_string(), v[1].0.to_string(), v[2].0.to_string());
        let slot = self.terms.entry(key).or_insert_with(Scalar::zero);
        *slot = &*slot + &signed;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&(String, String, String), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Schouten bracket of two bivectors:
/// `[[a/\b, c/\d]] = [a,d]/\b/\c - [a,c]/\b/\d + [b,c]/\a/\d - [b,d]/\a/\c`,
/// extended bilinearly. The table's structure constants are Jacobi-validated
/// before use.
pub fn schouten_bracket(r1: &Bivector, r2: &Bivector, table: &LieTable) -> Result<Trivector> {
    table.validate_jacobi()?;
    let mut out = Trivector::zero();
    for ((a, b), c1) in r1.iter_terms() {
        for ((c, d), c2) in r2.iter_terms() {
            let coeff = c1 * c2;
            // ([x, y], wedge1, wedge2, sign)
            let pieces: [(&str, &str, &str, &str, i64); 4] = [
                (a, d, b, c, 1),
                (a, c, b, d, -1),
                (b, c, a, d, 1),
                (b, d, a, c, -1),
            ];
            for (x, y, w1, w2, sign) in pieces {
                for (ck, k) in table.bracket(x, y)? {
                    let v = &(&ck * &coeff) * &Scalar::from_int(sign);
                    out.add_wedge(&k, w1, w2, v);
                }
            }
        }
    }
    Ok(out)
}
