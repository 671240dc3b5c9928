//! Closed-form checks for the deformed coproducts and antipodes of the two
//! one-parameter twist families, plus the structural Hopf axioms every
//! twisted coproduct has to satisfy (counit, antipode, multiplicativity).
//!
//! The expected expressions below are not free inputs: given the twisted
//! coproducts, `m ∘ (S ⊗ id) ∘ Δ = η ∘ ε` fixes `S` on each generator
//! uniquely, and the mirrored axiom must then agree. The crossed entries
//! (`L^0_k`, `L^0_0`) asserted here are the self-consistent solutions of
//! that system; variants that drop an exponential dressing or flip the sign
//! of the mixing term fail one of the two orientations.

mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use series_core::Scalar;
use twist_engine::Twist;
use weyl_engine::{Generator, NormalOrdered};

const ABELIAN_PARAMS: [(i64, i64); 4] = [(0, 1), (1, 4), (1, 2), (1, 1)];
const JORDANIAN_PARAMS: [(i64, i64); 3] = [(-1, 1), (1, 1), (3, 1)];

/// `(1 - h r P_0)^β`, summed as the terminating falling-factorial series
/// Σ_m h^m β(β-1)…(β-m+1) (-r P_0)^m / m!.
fn sigma_power(r: &BigRational, beta: &BigRational, w: u32) -> NormalOrdered {
    let y = gen(Generator::P(0), w)
        .mul_h(1)
        .truncate_to(w)
        .scalar_mul(&scalar_of(&-r.clone()));
    let mut acc = NormalOrdered::one(1, w, &metric());
    let mut ypow = acc.clone();
    let mut coeff = BigRational::one();
    for m in 0..w {
        let m_rat = BigRational::from_integer(BigInt::from(m));
        coeff = coeff * (beta - &m_rat) / (m_rat + BigRational::one());
        if coeff.is_zero() {
            break;
        }
        ypow = ypow.normal_product(&y).unwrap();
        acc = acc.add(&ypow.scalar_mul(&scalar_of(&coeff))).unwrap();
    }
    acc
}

/// The spatial-dilation combination `D - r L^0_0` that the lowering twist
/// mixes into the boost-like generators.
fn k_r(r: &BigRational, w: u32) -> NormalOrdered {
    let d = gen(Generator::D, w);
    let l00 = gen(Generator::L(0, 0), w).scalar_mul(&scalar_of(r));
    d.sub(&l00).unwrap()
}

fn h1(el: &NormalOrdered, w: u32) -> NormalOrdered {
    el.mul_h(1).truncate_to(w)
}

fn assert_same(label: &str, got: &NormalOrdered, want: &NormalOrdered) {
    let diff = got.sub(want).unwrap();
    assert!(
        diff.is_zero(),
        "{label}: engine and closed form disagree\n  engine: {got}\n  closed: {want}\n  diff:   {diff}"
    );
}

fn all_linear_generators() -> Vec<Generator> {
    let mut v: Vec<Generator> = (0..4).map(Generator::P).collect();
    for mu in 0..4 {
        for nu in 0..4 {
            v.push(Generator::L(mu, nu));
        }
    }
    v
}

fn shift_coproduct(g: Generator, s: &BigRational, w: u32) -> NormalOrdered {
    let one_minus_s = BigRational::one() - s;
    match g {
        Generator::P(0) => spread(&gen(g, w)),
        Generator::P(k) => {
            let pk = gen(Generator::P(k), w);
            exp_h_p0(&-s.clone(), w)
                .tensor(&pk)
                .unwrap()
                .add(&pk.tensor(&exp_h_p0(&one_minus_s, w)).unwrap())
                .unwrap()
        }
        Generator::L(m, k) if m >= 1 && k >= 1 => spread(&gen(g, w)),
        Generator::L(k, 0) if k >= 1 => {
            let lk0 = gen(g, w);
            exp_h_p0(s, w)
                .tensor(&lk0)
                .unwrap()
                .add(&lk0.tensor(&exp_h_p0(&-one_minus_s.clone(), w)).unwrap())
                .unwrap()
        }
        Generator::L(0, k) if k >= 1 => {
            let l0k = gen(g, w);
            let pk = gen(Generator::P(k), w);
            let d = gen(Generator::D, w);
            let t1 = exp_h_p0(&-s.clone(), w).tensor(&l0k).unwrap();
            let t2 = l0k.tensor(&exp_h_p0(&one_minus_s, w)).unwrap();
            let t3 = h1(&pk, w)
                .scalar_mul(&scalar_of(s))
                .tensor(&d.normal_product(&exp_h_p0(&one_minus_s, w)).unwrap())
                .unwrap();
            let t4 = h1(&d.normal_product(&exp_h_p0(&-s.clone(), w)).unwrap(), w)
                .scalar_mul(&scalar_of(&-one_minus_s.clone()))
                .tensor(&pk)
                .unwrap();
            t1.add(&t2).unwrap().add(&t3).unwrap().add(&t4).unwrap()
        }
        Generator::L(0, 0) => {
            let p0 = gen(Generator::P(0), w);
            let d = gen(Generator::D, w);
            let t3 = h1(&p0, w).scalar_mul(&scalar_of(s)).tensor(&d).unwrap();
            let t4 = h1(&d, w)
                .scalar_mul(&scalar_of(&-one_minus_s.clone()))
                .tensor(&p0)
                .unwrap();
            spread(&gen(g, w)).add(&t3).unwrap().add(&t4).unwrap()
        }
        _ => unreachable!("not a linear generator of this family"),
    }
}

fn shift_antipode(g: Generator, s: &BigRational, w: u32) -> NormalOrdered {
    let two_s_minus_1 = rat(2, 1) * s - BigRational::one();
    match g {
        Generator::P(0) => gen(g, w).neg(),
        Generator::P(k) => gen(Generator::P(k), w)
            .normal_product(&exp_h_p0(&two_s_minus_1, w))
            .unwrap()
            .neg(),
        Generator::L(m, k) if m >= 1 && k >= 1 => gen(g, w).neg(),
        Generator::L(k, 0) if k >= 1 => gen(g, w)
            .normal_product(&exp_h_p0(&-two_s_minus_1.clone(), w))
            .unwrap()
            .neg(),
        Generator::L(0, k) if k >= 1 => {
            let dpk = gen(Generator::D, w)
                .normal_product(&gen(Generator::P(k), w))
                .unwrap();
            let inner = gen(g, w)
                .sub(&h1(&dpk, w).scalar_mul(&scalar_of(&two_s_minus_1)))
                .unwrap();
            inner
                .normal_product(&exp_h_p0(&two_s_minus_1, w))
                .unwrap()
                .neg()
        }
        Generator::L(0, 0) => {
            let dp0 = gen(Generator::D, w)
                .normal_product(&gen(Generator::P(0), w))
                .unwrap();
            gen(g, w)
                .neg()
                .add(&h1(&dp0, w).scalar_mul(&scalar_of(&two_s_minus_1)))
                .unwrap()
        }
        _ => unreachable!("not a linear generator of this family"),
    }
}

fn lowering_coproduct(g: Generator, r: &BigRational, w: u32) -> NormalOrdered {
    let one = NormalOrdered::one(1, w, &metric());
    let r_inv = r.recip();
    let beta_up = (r + BigRational::one()) * &r_inv;
    match g {
        Generator::P(0) => {
            let p0 = gen(g, w);
            one.tensor(&p0)
                .unwrap()
                .add(&p0.tensor(&sigma_power(r, &BigRational::one(), w)).unwrap())
                .unwrap()
        }
        Generator::P(k) => {
            let pk = gen(Generator::P(k), w);
            one.tensor(&pk)
                .unwrap()
                .add(&pk.tensor(&sigma_power(r, &-r_inv.clone(), w)).unwrap())
                .unwrap()
        }
        Generator::L(m, k) if m >= 1 && k >= 1 => spread(&gen(g, w)),
        Generator::L(k, 0) if k >= 1 => {
            let lk0 = gen(g, w);
            one.tensor(&lk0)
                .unwrap()
                .add(&lk0.tensor(&sigma_power(r, &beta_up, w)).unwrap())
                .unwrap()
        }
        Generator::L(0, k) if k >= 1 => {
            let l0k = gen(g, w);
            let pk = gen(Generator::P(k), w);
            let crossed = h1(&k_r(r, w), w)
                .neg()
                .tensor(
                    &pk.normal_product(&sigma_power(r, &-BigRational::one(), w))
                        .unwrap(),
                )
                .unwrap();
            one.tensor(&l0k)
                .unwrap()
                .add(&l0k.tensor(&sigma_power(r, &-beta_up.clone(), w)).unwrap())
                .unwrap()
                .add(&crossed)
                .unwrap()
        }
        Generator::L(0, 0) => {
            let p0 = gen(Generator::P(0), w);
            let crossed = h1(&k_r(r, w), w)
                .neg()
                .tensor(
                    &p0.normal_product(&sigma_power(r, &-BigRational::one(), w))
                        .unwrap(),
                )
                .unwrap();
            spread(&gen(g, w)).add(&crossed).unwrap()
        }
        _ => unreachable!("not a linear generator of this family"),
    }
}

fn lowering_antipode(g: Generator, r: &BigRational, w: u32) -> NormalOrdered {
    let r_inv = r.recip();
    let beta_up = (r + BigRational::one()) * &r_inv;
    match g {
        Generator::P(0) => gen(g, w)
            .normal_product(&sigma_power(r, &-BigRational::one(), w))
            .unwrap()
            .neg(),
        Generator::P(k) => gen(Generator::P(k), w)
            .normal_product(&sigma_power(r, &r_inv, w))
            .unwrap()
            .neg(),
        Generator::L(m, k) if m >= 1 && k >= 1 => gen(g, w).neg(),
        Generator::L(k, 0) if k >= 1 => gen(g, w)
            .normal_product(&sigma_power(r, &-beta_up.clone(), w))
            .unwrap()
            .neg(),
        Generator::L(0, k) if k >= 1 => {
            let crossed = k_r(r, w)
                .normal_product(&gen(Generator::P(k), w))
                .unwrap();
            gen(g, w)
                .add(&h1(&crossed, w))
                .unwrap()
                .normal_product(&sigma_power(r, &beta_up, w))
                .unwrap()
                .neg()
        }
        Generator::L(0, 0) => {
            let crossed = k_r(r, w)
                .normal_product(&gen(Generator::P(0), w))
                .unwrap();
            gen(g, w).neg().sub(&h1(&crossed, w)).unwrap()
        }
        _ => unreachable!("not a linear generator of this family"),
    }
}

#[test]
fn shift_family_coproducts_match_their_closed_forms() {
    let w = 6;
    for (n, d) in ABELIAN_PARAMS {
        let tw = abelian((n, d), w);
        let s = rat(n, d);
        for g in all_linear_generators() {
            let got = tw.twisted_coproduct(g).unwrap();
            let want = shift_coproduct(g, &s, w);
            assert_same(&format!("Δ({g:?}) at s={n}/{d}"), &got, &want);
        }
    }
}

#[test]
fn lowering_family_coproducts_match_their_closed_forms() {
    let w = 6;
    for (n, d) in JORDANIAN_PARAMS {
        let tw = jordanian((n, d), w);
        let r = rat(n, d);
        for g in all_linear_generators() {
            let got = tw.twisted_coproduct(g).unwrap();
            let want = lowering_coproduct(g, &r, w);
            assert_same(&format!("Δ({g:?}) at r={n}/{d}"), &got, &want);
        }
    }
}

#[test]
fn shift_family_antipodes_match_their_closed_forms() {
    let w = 6;
    for (n, d) in ABELIAN_PARAMS {
        let tw = abelian((n, d), w);
        let s = rat(n, d);
        for g in all_linear_generators() {
            let got = tw.twisted_antipode(g).unwrap();
            let want = shift_antipode(g, &s, w);
            assert_same(&format!("S({g:?}) at s={n}/{d}"), &got, &want);
        }
    }
}

#[test]
fn lowering_family_antipodes_match_their_closed_forms() {
    let w = 6;
    for (n, d) in JORDANIAN_PARAMS {
        let tw = jordanian((n, d), w);
        let r = rat(n, d);
        for g in all_linear_generators() {
            let got = tw.twisted_antipode(g).unwrap();
            let want = lowering_antipode(g, &r, w);
            assert_same(&format!("S({g:?}) at r={n}/{d}"), &got, &want);
        }
    }
}

#[test]
fn momentum_twist_leaves_momenta_primitive() {
    let w = 6;
    let tw = theta(&[(0, 1, (1, 1)), (0, 2, (1, 2)), (1, 3, (2, 1))], w);
    for mu in 0..4 {
        let g = Generator::P(mu);
        let got = tw.twisted_coproduct(g).unwrap();
        assert_same(&format!("Δ(P_{mu})"), &got, &spread(&gen(g, w)));
        let s = tw.twisted_antipode(g).unwrap();
        assert_same(&format!("S(P_{mu})"), &s, &gen(g, w).neg());
    }
}

/// Sum `S(f_(1)) · f_(2)` and `f_(1) · S(f_(2))` over the terms of a
/// momentum-generator coproduct; both must vanish since ε(P_µ) = 0.
fn momentum_antipode_axiom_residuals(
    tw: &Twist,
    g: Generator,
) -> (NormalOrdered, NormalOrdered) {
    let w = tw.h_order();
    let cop = tw.twisted_coproduct(g).unwrap();
    let mut left = NormalOrdered::zero(1, w, &metric());
    let mut right = left.clone();
    for (key, c) in cop.iter_terms() {
        let h = key[0] as u32;
        let (xs0, ps0) = NormalOrdered::key_leg(key, 0);
        let (xs1, ps1) = NormalOrdered::key_leg(key, 1);
        assert_eq!(
            (xs0, xs1),
            ([0; 4], [0; 4]),
            "momentum coproduct grew a position leg"
        );
        let s0 = tw
            .twisted_antipode_momentum(&mono(0, xs0, ps0, c.clone(), w))
            .unwrap();
        let tail = mono(h, xs1, ps1, Scalar::one(), w);
        left = left
            .add(&s0.normal_product(&tail).unwrap().truncate_to(w))
            .unwrap();
        let s1 = tw
            .twisted_antipode_momentum(&mono(0, xs1, ps1, Scalar::one(), w))
            .unwrap();
        let head = mono(h, xs0, ps0, c.clone(), w);
        right = right
            .add(&head.normal_product(&s1).unwrap().truncate_to(w))
            .unwrap();
    }
    (left, right)
}

#[test]
fn antipode_axiom_holds_on_momenta_for_every_family() {
    let w = 5;
    let twists = [
        abelian((0, 1), w),
        abelian((1, 2), w),
        abelian((1, 1), w),
        jordanian((-1, 1), w),
        jordanian((1, 1), w),
        jordanian((3, 1), w),
        theta(&[(0, 1, (1, 1)), (2, 3, (1, 2))], w),
    ];
    for tw in &twists {
        for mu in 0..4 {
            let (l, r) = momentum_antipode_axiom_residuals(tw, Generator::P(mu));
            assert!(
                l.is_zero(),
                "m(S⊗id)Δ(P_{mu}) ≠ ε(P_{mu}) for {}: {l}",
                tw.family().name()
            );
            assert!(
                r.is_zero(),
                "m(id⊗S)Δ(P_{mu}) ≠ ε(P_{mu}) for {}: {r}",
                tw.family().name()
            );
        }
    }
}

fn assert_coproduct_respects_brackets(tw: &Twist) {
    let w = tw.h_order();
    let gens = all_linear_generators();
    let els: Vec<NormalOrdered> = gens.iter().map(|g| gen(*g, w)).collect();
    let cops: Vec<NormalOrdered> = gens
        .iter()
        .map(|g| tw.twisted_coproduct(*g).unwrap())
        .collect();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let lhs = tw
                .twisted_coproduct_of(&els[i].commutator(&els[j]).unwrap())
                .unwrap();
            let rhs = cops[i].commutator(&cops[j]).unwrap();
            let diff = lhs.sub(&rhs).unwrap();
            assert!(
                diff.is_zero(),
                "Δ[{:?},{:?}] ≠ [Δ{:?},Δ{:?}] for {}",
                gens[i],
                gens[j],
                gens[i],
                gens[j],
                tw.family().name()
            );
        }
    }
}

#[test]
fn shift_coproduct_respects_every_commutator() {
    assert_coproduct_respects_brackets(&abelian((1, 2), 4));
}

#[test]
fn lowering_coproduct_respects_every_commutator() {
    assert_coproduct_respects_brackets(&jordanian((1, 1), 4));
}

#[test]
fn momentum_twist_coproduct_respects_every_commutator() {
    assert_coproduct_respects_brackets(&theta(&[(0, 1, (1, 1)), (1, 2, (1, 3))], 4));
}

#[test]
fn counit_strips_either_leg_of_every_coproduct() {
    let w = 4;
    let twists = [
        abelian((1, 4), w),
        jordanian((-1, 1), w),
        theta(&[(0, 3, (2, 1))], w),
    ];
    for tw in &twists {
        for g in all_linear_generators() {
            let cop = tw.twisted_coproduct(g).unwrap();
            let expect = gen(g, w);
            assert_same(
                &format!("(ε⊗id)Δ({g:?}) for {}", tw.family().name()),
                &cop.counit_leg(0).unwrap(),
                &expect,
            );
            assert_same(
                &format!("(id⊗ε)Δ({g:?}) for {}", tw.family().name()),
                &cop.counit_leg(1).unwrap(),
                &expect,
            );
        }
    }
}

#[test]
fn composite_elements_are_rejected_by_the_linear_coproduct() {
    let tw = abelian((1, 2), 4);
    let quad = mono(0, [2, 0, 0, 0], [0, 1, 0, 0], Scalar::one(), 4);
    assert!(tw.twisted_coproduct_of(&quad).is_err());

    // A linear combination with a unit part is fine, and the unit part is
    // carried through as 1 ⊗ 1.
    let lin = gen(Generator::P(0), 4)
        .mul_h(1)
        .truncate_to(4)
        .add(&NormalOrdered::one(1, 4, &metric()))
        .unwrap();
    let cop = tw.twisted_coproduct_of(&lin).unwrap();
    let want = spread(&gen(Generator::P(0), 4))
        .mul_h(1)
        .truncate_to(4)
        .add(&NormalOrdered::one(2, 4, &metric()))
        .unwrap();
    assert_same("Δ(1 + hP_0)", &cop, &want);
}
