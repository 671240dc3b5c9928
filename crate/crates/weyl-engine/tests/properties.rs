//! Randomized structural properties of the normal-ordered product.

use proptest::prelude::*;
use weyl_engine::{MetricSig, NormalOrdered};

const N: u32 = 4;

fn letter(idx: u8) -> NormalOrdered {
    let m = MetricSig::mostly_plus();
    match idx {
        0..=3 => NormalOrdered::x(idx as usize, N, &m),
        _ => NormalOrdered::p((idx - 4) as usize, N, &m),
    }
}

fn word(letters: &[u8]) -> NormalOrdered {
    letters
        .iter()
        .skip(1)
        .fold(letter(letters[0]), |acc, &l| {
            acc.normal_product(&letter(l)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Any parenthesization of a word reduces to the same normal form.
    #[test]
    fn reduction_is_confluent(letters in prop::collection::vec(0u8..8, 2..6), split in 1usize..5) {
        let split = split.min(letters.len() - 1);
        let whole = word(&letters);
        let parts = word(&letters[..split]).normal_product(&word(&letters[split..])).unwrap();
        prop_assert!(whole.sub(&parts).unwrap().is_zero());
    }

    /// Acting with a product equals acting twice: the position polynomials
    /// form a genuine left module.
    #[test]
    fn action_composes(
        u in prop::collection::vec(0u8..8, 1..4),
        v in prop::collection::vec(0u8..8, 1..4),
        exps in prop::collection::vec(0u16..3, 4),
    ) {
        let m = MetricSig::mostly_plus();
        let mut xs = [0u16; 4];
        xs.copy_from_slice(&exps);
        let f = NormalOrdered::monomial(0, xs, [0; 4], series_core::Scalar::from_int(1), N, &m);
        let ue = word(&u);
        let ve = word(&v);
        let via_product = ue.normal_product(&ve).unwrap().act(&f).unwrap();
        let via_steps = ue.act(&ve.act(&f).unwrap()).unwrap();
        prop_assert!(via_product.sub(&via_steps).unwrap().is_zero());
    }

    /// Transpose is an anti-homomorphism: (ab)^T = b^T a^T.
    #[test]
    fn transpose_reverses_products(
        a in prop::collection::vec(0u8..8, 1..4),
        b in prop::collection::vec(0u8..8, 1..4),
    ) {
        let ae = word(&a);
        let be = word(&b);
        let lhs = ae.normal_product(&be).unwrap().transpose().unwrap();
        let rhs = be.transpose().unwrap().normal_product(&ae.transpose().unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }
}
