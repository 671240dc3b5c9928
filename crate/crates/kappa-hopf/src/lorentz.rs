//! The Lorentz letters that may decorate a tensor term.
//!
//! Rotations and boosts close on each other under the bracket
//!
//! ```text
//! [M_i, M_j] = i eps_ijk M_k      [M_i, N_j] = i eps_ijk N_k
//! [N_i, N_j] = -i eps_ijk M_k
//! ```
//!
//! and every deformed structure map downstream keeps tensor terms *linear* in
//! these letters, which is what makes the compact tensor representation in
//! [`crate::tensor`] closed under commutators.

use std::fmt;

use serde::Serialize;
use series_core::Scalar;
use weyl_engine::epsilon3;

/// One Lorentz letter: a rotation `M(i)` or a boost `N(i)`, `i` in `1..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum LorentzGen {
    M(u8),
    N(u8),
}

impl LorentzGen {
    pub fn index(self) -> u8 {
        match self {
            LorentzGen::M(i) | LorentzGen::N(i) => i,
        }
    }

    /// All six letters, rotations first.
    pub fn all() -> [LorentzGen; 6] {
        [
            LorentzGen::M(1),
            LorentzGen::M(2),
            LorentzGen::M(3),
            LorentzGen::N(1),
            LorentzGen::N(2),
            LorentzGen::N(3),
        ]
    }
}

impl fmt::Display for LorentzGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LorentzGen::M(i) => write!(f, "M{i}"),
            LorentzGen::N(i) => write!(f, "N{i}"),
        }
    }
}

/// Structure constants: `[a, b]` as a list of `(coefficient, letter)` pairs.
pub fn lie_bracket(a: LorentzGen, b: LorentzGen) -> Vec<(Scalar, LorentzGen)> {
    use LorentzGen::{M, N};
    let (i, j) = (a.index() as usize, b.index() as usize);
    let mut out = Vec::new();
    for k in 1..=3u8 {
        let e = epsilon3(i, j, k as usize);
        if e == 0 {
            continue;
        }
        let coeff = Scalar::rational_i(e, 1);
        match (a, b) {
            (M(_), M(_)) => out.push((coeff, M(k))),
            (M(_), N(_)) => out.push((coeff, N(k))),
            // [N_i, M_j] = -[M_j, N_i] = -i eps_jik N_k = +i eps_ijk N_k
            (N(_), M(_)) => out.push((coeff, N(k))),
            (N(_), N(_)) => out.push((-coeff, M(k))),
        }
    }
    out
}
