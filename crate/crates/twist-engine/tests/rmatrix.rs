//! The quasi-triangular structure `R = F_21 F^{-1}`: closed forms where they
//! exist, the classical limit against the expected classical r-matrices, and
//! the quantum Yang–Baxter equation.

mod common;

use common::*;
use series_core::Scalar;
use twist_engine::{CoboundaryWord, Twist, TwistFamily};
use weyl_engine::{Generator, NormalOrdered};

/// Keep only the terms carrying exactly `m` powers of the deformation
/// parameter (the power itself is retained).
fn h_slice(el: &NormalOrdered, m: u16) -> NormalOrdered {
    let w = el.h_order();
    let mut acc = NormalOrdered::zero(el.legs(), w, el.metric());
    for (key, c) in el.iter_terms() {
        if key[0] != m {
            continue;
        }
        let (xs0, ps0) = NormalOrdered::key_leg(key, 0);
        let (xs1, ps1) = NormalOrdered::key_leg(key, 1);
        let term = mono(m as u32, xs0, ps0, c.clone(), w)
            .tensor(&mono(0, xs1, ps1, Scalar::one(), w))
            .unwrap();
        acc = acc.add(&term).unwrap();
    }
    acc
}

/// `a ⊗ b - b ⊗ a`.
fn wedge(a: &NormalOrdered, b: &NormalOrdered) -> NormalOrdered {
    a.tensor(b).unwrap().sub(&b.tensor(a).unwrap()).unwrap()
}

#[test]
fn shift_family_r_matrix_is_the_exponential_of_the_dilation_wedge() {
    let w = 6;
    let d = gen(Generator::D, w);
    let p0 = gen(Generator::P(0), w);
    let closed = wedge(&d, &p0)
        .mul_h(1)
        .truncate_to(w)
        .scalar_mul(&Scalar::i())
        .exp()
        .unwrap();
    for (n, dd) in [(0, 1), (1, 2), (1, 1), (3, 1)] {
        let r = abelian((n, dd), w).universal_r().unwrap();
        let diff = r.sub(&closed).unwrap();
        assert!(
            diff.is_zero(),
            "R at s={n}/{dd} differs from exp(ih D∧P_0): {diff}"
        );
    }
}

#[test]
fn shift_family_classical_r_matrix_is_the_dilation_wedge() {
    let w = 6;
    let r = abelian((1, 2), w).universal_r().unwrap();
    let d = gen(Generator::D, w);
    let p0 = gen(Generator::P(0), w);
    let want = wedge(&d, &p0)
        .mul_h(1)
        .truncate_to(w)
        .scalar_mul(&Scalar::i());
    let diff = h_slice(&r, 1).sub(&want).unwrap();
    assert!(diff.is_zero(), "classical limit mismatch: {diff}");
}

#[test]
fn lowering_family_classical_r_matrix_mixes_dilation_and_time_boost() {
    let w = 5;
    for (n, d) in [(-1, 1), (1, 1), (3, 1)] {
        let tw = jordanian((n, d), w);
        let r = tw.universal_r().unwrap();
        let k = gen(Generator::D, w).sub(
            &gen(Generator::L(0, 0), w).scalar_mul(&scalar_of(&rat(n, d))),
        )
        .unwrap();
        let p0 = gen(Generator::P(0), w);
        let want = wedge(&k, &p0)
            .mul_h(1)
            .truncate_to(w)
            .scalar_mul(&Scalar::i());
        let diff = h_slice(&r, 1).sub(&want).unwrap();
        assert!(
            diff.is_zero(),
            "classical limit at r={n}/{d} is not (D - r L^0_0)∧P_0: {diff}"
        );
    }
}

#[test]
fn momentum_twist_r_matrix_is_the_doubled_inverse_twist() {
    let w = 6;
    let entries: &[(usize, usize, (i64, i64))] = &[(0, 1, (1, 1)), (2, 3, (1, 2))];
    let tw = theta(entries, w);
    let r = tw.universal_r().unwrap();
    let fi = tw.f_inv();
    let want = fi.normal_product(fi).unwrap();
    let diff = r.sub(&want).unwrap();
    assert!(diff.is_zero(), "R should equal F^{{-2}} here: {diff}");

    // Equivalently exp(-i θ^{μν} P_μ ⊗ P_ν), built directly.
    let mut exponent = NormalOrdered::zero(2, w, &metric());
    for &(mu, nu, (en, ed)) in entries {
        let pm = gen(Generator::P(mu), w);
        let pn = gen(Generator::P(nu), w);
        exponent = exponent
            .add(&wedge(&pm, &pn).scalar_mul(&scalar_of(&rat(en, ed))))
            .unwrap();
    }
    let closed = exponent
        .scalar_mul(&Scalar::minus_i())
        .with_deg_cap(Some(w))
        .exp()
        .unwrap();
    let diff = r.sub(&closed).unwrap();
    assert!(diff.is_zero(), "R differs from its closed form: {diff}");
}

#[test]
fn coboundary_twists_have_a_trivial_r_matrix() {
    let w = 5;
    for word in [
        CoboundaryWord::h_dilation(),
        CoboundaryWord::ih_dilation_p0(&rat(2, 1)),
    ] {
        let tw = Twist::build(TwistFamily::Coboundary { word }, w, &metric()).unwrap();
        let r = tw.universal_r().unwrap();
        let unit = NormalOrdered::one(2, w, &metric());
        let diff = r.sub(&unit).unwrap();
        assert!(diff.is_zero(), "coboundary R must be 1 ⊗ 1: {diff}");
        // In particular the classical r-matrix (the antisymmetric first-order
        // part) vanishes.
        assert!(h_slice(&r, 1).is_zero());
    }
}

#[test]
fn yang_baxter_holds_for_every_family() {
    let w = 4;
    let twists = [
        abelian((0, 1), w),
        abelian((1, 2), w),
        jordanian((-1, 1), w),
        jordanian((1, 1), w),
        theta(&[(0, 1, (1, 1)), (1, 2, (1, 3))], w),
    ];
    for tw in &twists {
        let res = tw.qybe_residual().unwrap();
        assert!(
            res.is_zero(),
            "Yang–Baxter residual for {} {}: {res}",
            tw.family().name(),
            tw.family().param_label(),
        );
    }
}
