//! Diagonal spacetime metric carried by every algebra element.
//!
//! Only the two Lorentzian sign conventions in four dimensions are supported.
//! The canonical commutator `[p_mu, x^nu] = -i delta^nu_mu` never involves the
//! metric; it enters only when indices are raised or lowered (boosts,
//! rotations, contractions such as `p^2 = eta^{mu nu} p_mu p_nu`).

use std::fmt;

/// Diagonal metric signature in four spacetime dimensions.
///
/// Index 0 is time; 1..=3 are spatial. `signs[mu]` is the diagonal entry
/// `eta_{mu mu}`, either `+1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MetricSig {
    signs: [i8; 4],
}

impl MetricSig {
    /// The default convention `(-,+,+,+)`.
    pub fn mostly_plus() -> Self {
        MetricSig { signs: [-1, 1, 1, 1] }
    }

    /// The flipped convention `(+,-,-,-)` used by the dispersion-relation layer.
    pub fn mostly_minus() -> Self {
        MetricSig { signs: [1, -1, -1, -1] }
    }

    /// Spacetime dimension (always 4).
    pub fn dim(&self) -> usize {
        4
    }

    /// Diagonal entry `eta_{mu mu}` as a signed integer.
    pub fn eta(&self, mu: usize) -> i8 {
        self.signs[mu]
    }

    /// All four diagonal entries.
    pub fn signs(&self) -> [i8; 4] {
        self.signs
    }
}

impl Default for MetricSig {
    fn default() -> Self {
        MetricSig::mostly_plus()
    }
}

impl fmt::Display for MetricSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |s: i8| if s > 0 { '+' } else { '-' };
        write!(
            f,
            "({},{},{},{})",
            render(self.signs[0]),
            render(self.signs[1]),
            render(self.signs[2]),
            render(self.signs[3])
        )
    }
}

/// Totally antisymmetric symbol on spatial indices `1..=3`, with
/// `epsilon(1,2,3) = +1`. Returns `0` whenever two arguments coincide.
pub fn epsilon3(i: usize, j: usize, k: usize) -> i64 {
    debug_assert!((1..=3).contains(&i) && (1..=3).contains(&j) && (1..=3).contains(&k));
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}
