//! Core algebra tests: normal ordering, commutators, module action, counit,
//! transpose, and tensor-leg plumbing.

use num_rational::BigRational;
use series_core::{Scalar, TruncSeries, VarSet};
use weyl_engine::{
    epsilon3, igl_realize, Generator, MetricSig, NormalOrdered, WeylError,
};

const N: u32 = 6;

fn mp() -> MetricSig {
    MetricSig::mostly_plus()
}

fn x(mu: usize) -> NormalOrdered {
    NormalOrdered::x(mu, N, &mp())
}

fn p(mu: usize) -> NormalOrdered {
    NormalOrdered::p(mu, N, &mp())
}

fn gen(g: Generator) -> NormalOrdered {
    igl_realize(g, N, &mp()).unwrap()
}

fn assert_eq_el(a: &NormalOrdered, b: &NormalOrdered, what: &str) {
    let d = a.sub(b).unwrap();
    assert!(d.is_zero(), "{what}: difference {d}");
}

// --- normal ordering -------------------------------------------------------

#[test]
fn single_contraction() {
    // p1 x1 = x1 p1 - i
    let got = p(1).normal_product(&x(1)).unwrap();
    let expected = x(1)
        .normal_product(&p(1))
        .unwrap()
        .add(&NormalOrdered::scalar(1, N, &mp(), Scalar::minus_i()))
        .unwrap();
    assert_eq_el(&got, &expected, "p1 x1");
}

#[test]
fn cross_direction_factors_commute() {
    for (a, b) in [(p(1), x(2)), (p(0), x(3)), (x(0), x(1)), (p(2), p(3))] {
        let ab = a.normal_product(&b).unwrap();
        let ba = b.normal_product(&a).unwrap();
        assert_eq_el(&ab, &ba, "cross-direction product");
    }
}

#[test]
fn repeated_contraction_weights() {
    // p^3 x^2 = x^2 p^3 - 6i x p^2 - 6 p  (same direction)
    let got = p(1).pow(3).unwrap().normal_product(&x(1).pow(2).unwrap()).unwrap();
    assert_eq!(got.coefficient(0, [0, 2, 0, 0], [0, 3, 0, 0]), Scalar::from_int(1));
    assert_eq!(
        got.coefficient(0, [0, 1, 0, 0], [0, 2, 0, 0]),
        Scalar::rational_i(-6, 1)
    );
    assert_eq!(got.coefficient(0, [0, 0, 0, 0], [0, 1, 0, 0]), Scalar::from_int(-6));
    assert_eq!(got.num_terms(), 3);
}

#[test]
fn square_of_dilation_letter() {
    // (x1 p1)^2 = x1^2 p1^2 - i x1 p1
    let d = x(1).normal_product(&p(1)).unwrap();
    let got = d.pow(2).unwrap();
    assert_eq!(got.coefficient(0, [0, 2, 0, 0], [0, 2, 0, 0]), Scalar::from_int(1));
    assert_eq!(got.coefficient(0, [0, 1, 0, 0], [0, 1, 0, 0]), Scalar::minus_i());
    assert_eq!(got.num_terms(), 2);
}

#[test]
fn product_is_associative_on_samples() {
    let words: [&[NormalOrdered]; 3] = [
        &[p(0), x(0), p(0)],
        &[p(1), p(1), x(1), x(1)],
        &[x(2), p(2), x(2), p(1), x(1)],
    ];
    for w in words {
        let left = w
            .iter()
            .skip(1)
            .fold(w[0].clone(), |acc, e| acc.normal_product(e).unwrap());
        let right = w
            .iter()
            .rev()
            .skip(1)
            .fold(w.last().unwrap().clone(), |acc, e| e.normal_product(&acc).unwrap());
        assert_eq_el(&left, &right, "associativity");
    }
}

// --- commutators of scaling generators --------------------------------------

#[test]
fn dilation_commutators() {
    let d = gen(Generator::D);
    for j in 1..4 {
        let c = d.commutator(&p(j)).unwrap();
        assert_eq_el(&c, &p(j).scalar_mul(&Scalar::i()), "[D, p_j] = i p_j");
    }
    assert!(d.commutator(&p(0)).unwrap().is_zero());
}

#[test]
fn time_scaling_commutator() {
    let l00 = gen(Generator::L(0, 0));
    let c = l00.commutator(&p(0)).unwrap();
    assert_eq_el(&c, &p(0).scalar_mul(&Scalar::i()), "[L^0_0, p_0] = i p_0");
}

#[test]
fn momenta_commute() {
    for mu in 0..4 {
        for nu in 0..4 {
            assert!(p(mu).commutator(&p(nu)).unwrap().is_zero());
        }
    }
}

// --- Lorentz sector under (-,+,+,+) -----------------------------------------

#[test]
fn rotations_close() {
    // [M_i, M_j] = i eps_{ijk} M_k
    for i in 1..4 {
        for j in 1..4 {
            let got = gen(Generator::Rot(i)).commutator(&gen(Generator::Rot(j))).unwrap();
            let mut expected = NormalOrdered::zero(1, N, &mp());
            for k in 1..4 {
                let e = epsilon3(i, j, k);
                if e != 0 {
                    expected = expected
                        .add(&gen(Generator::Rot(k)).scalar_mul(&Scalar::rational_i(e, 1)))
                        .unwrap();
                }
            }
            assert_eq_el(&got, &expected, "[M_i, M_j]");
        }
    }
}

#[test]
fn rotations_rotate_boosts() {
    for i in 1..4 {
        for j in 1..4 {
            let got = gen(Generator::Rot(i)).commutator(&gen(Generator::Boost(j))).unwrap();
            let mut expected = NormalOrdered::zero(1, N, &mp());
            for k in 1..4 {
                let e = epsilon3(i, j, k);
                if e != 0 {
                    expected = expected
                        .add(&gen(Generator::Boost(k)).scalar_mul(&Scalar::rational_i(e, 1)))
                        .unwrap();
                }
            }
            assert_eq_el(&got, &expected, "[M_i, N_j]");
        }
    }
}

#[test]
fn boosts_close_into_rotations() {
    // [N_i, N_j] = -i eps_{ijk} M_k
    for i in 1..4 {
        for j in 1..4 {
            let got = gen(Generator::Boost(i)).commutator(&gen(Generator::Boost(j))).unwrap();
            let mut expected = NormalOrdered::zero(1, N, &mp());
            for k in 1..4 {
                let e = epsilon3(i, j, k);
                if e != 0 {
                    expected = expected
                        .add(&gen(Generator::Rot(k)).scalar_mul(&Scalar::rational_i(-e, 1)))
                        .unwrap();
                }
            }
            assert_eq_el(&got, &expected, "[N_i, N_j]");
        }
    }
}

#[test]
fn rotations_act_on_momenta() {
    // [M_j, P_k] = i eps_{jkl} P_l and [M_j, P_0] = 0
    for j in 1..4 {
        assert!(gen(Generator::Rot(j)).commutator(&p(0)).unwrap().is_zero());
        for k in 1..4 {
            let got = gen(Generator::Rot(j)).commutator(&p(k)).unwrap();
            let mut expected = NormalOrdered::zero(1, N, &mp());
            for l in 1..4 {
                let e = epsilon3(j, k, l);
                if e != 0 {
                    expected = expected.add(&p(l).scalar_mul(&Scalar::rational_i(e, 1))).unwrap();
                }
            }
            assert_eq_el(&got, &expected, "[M_j, P_k]");
        }
    }
}

#[test]
fn boosts_act_on_momenta() {
    // [N_j, P_k] = -i delta_{jk} P_0 and [N_j, P_0] = -i P_j
    for j in 1..4 {
        let c0 = gen(Generator::Boost(j)).commutator(&p(0)).unwrap();
        assert_eq_el(&c0, &p(j).scalar_mul(&Scalar::minus_i()), "[N_j, P_0]");
        for k in 1..4 {
            let ck = gen(Generator::Boost(j)).commutator(&p(k)).unwrap();
            if j == k {
                assert_eq_el(&ck, &p(0).scalar_mul(&Scalar::minus_i()), "[N_j, P_j]");
            } else {
                assert!(ck.is_zero(), "[N_{j}, P_{k}] should vanish");
            }
        }
    }
}

// --- module action on position polynomials -----------------------------------

#[test]
fn momentum_acts_as_derivative() {
    // p_0 |> x^0 = -i
    let got = p(0).act(&x(0)).unwrap();
    assert_eq_el(
        &got,
        &NormalOrdered::scalar(1, N, &mp(), Scalar::minus_i()),
        "p_0 |> x^0",
    );
}

#[test]
fn dilation_grades_spatial_coordinates() {
    let d = gen(Generator::D);
    for j in 1..4 {
        let got = d.act(&x(j)).unwrap();
        assert_eq_el(&got, &x(j).scalar_mul(&Scalar::minus_i()), "D |> x^j");
    }
    assert!(d.act(&x(0)).unwrap().is_zero());
}

#[test]
fn exponential_of_dilation_scales() {
    // exp(i h D) |> x^j = (sum_k h^k / k!) x^j, the truncated exp(h) x^j
    let arg = gen(Generator::D).scalar_mul(&Scalar::i()).mul_h(1).truncate_to(N);
    let u = arg.exp().unwrap();
    let got = u.act(&x(1)).unwrap();

    let mut expected = NormalOrdered::zero(1, N, &mp());
    let mut fact = BigRational::from_integer(1.into());
    for k in 0..=N {
        if k > 0 {
            fact = fact / BigRational::from_integer((k as i64).into());
        }
        let c = Scalar::new(fact.clone(), BigRational::from_integer(0.into()));
        expected = expected
            .add(&NormalOrdered::monomial(k, [0, 1, 0, 0], [0; 4], c, N, &mp()))
            .unwrap();
    }
    assert_eq_el(&got, &expected, "exp(i h D) |> x^1");
}

#[test]
fn action_composes_like_multiplication() {
    let u = x(1).normal_product(&p(1)).unwrap();
    let v = p(1);
    let f = x(1).pow(2).unwrap().normal_product(&x(2)).unwrap();
    let uv = u.normal_product(&v).unwrap();
    let via_product = uv.act(&f).unwrap();
    let via_steps = u.act(&v.act(&f).unwrap()).unwrap();
    assert_eq_el(&via_product, &via_steps, "act(uv, f) vs act(u, act(v, f))");
}

#[test]
fn action_rejects_momentum_targets() {
    let err = p(0).act(&p(0)).unwrap_err();
    assert!(matches!(err, WeylError::NotPolynomial(_)));
}

// --- counit -------------------------------------------------------------------

#[test]
fn counit_kills_generators_and_fixes_identity() {
    for g in [
        Generator::D,
        Generator::P(0),
        Generator::L(0, 1),
        Generator::Rot(2),
        Generator::Boost(3),
    ] {
        let s = gen(g).counit_series().unwrap();
        assert!(s.is_zero(), "counit of a generator must vanish");
    }
    let one = NormalOrdered::one(1, N, &mp()).counit_series().unwrap();
    assert!(one.sub(&TruncSeries::one(one.vars(), N)).unwrap().is_zero());
}

#[test]
fn counit_of_momentum_exponentials_is_one() {
    // Every non-constant normal word ends in a momentum or position factor,
    // so only the constant term survives.
    let e1 = p(0).mul_h(1).truncate_to(N).exp().unwrap();
    let s1 = e1.counit_series().unwrap();
    assert!(s1.sub(&TruncSeries::one(s1.vars(), N)).unwrap().is_zero());

    let e2 = x(1)
        .normal_product(&p(1))
        .unwrap()
        .mul_h(1)
        .truncate_to(N)
        .exp()
        .unwrap();
    let s2 = e2.counit_series().unwrap();
    assert!(s2.sub(&TruncSeries::one(s2.vars(), N)).unwrap().is_zero());
}

// --- tensor legs ---------------------------------------------------------------

#[test]
fn tensor_swap_and_permute() {
    let a = p(0);
    let b = x(1).normal_product(&p(1)).unwrap();
    let ab = a.tensor(&b).unwrap();
    let ba = b.tensor(&a).unwrap();
    assert_eq_el(&ab.swap_legs().unwrap(), &ba, "swap of a 2-leg tensor");

    let c = x(2);
    let abc = ab.tensor(&c).unwrap();
    // cyclic rotation: output leg j = input leg perm[j]
    let rot = abc.permute_legs(&[2, 0, 1]).unwrap();
    let expected = c.tensor(&a).unwrap().tensor(&b).unwrap();
    assert_eq_el(&rot, &expected, "cyclic permutation");
}

#[test]
fn unit_leg_roundtrip() {
    let a = x(1).normal_product(&p(2)).unwrap();
    for pos in 0..2 {
        let padded = a.insert_unit_leg(pos).unwrap();
        assert_eq!(padded.legs(), 2);
        let back = padded.counit_leg(pos).unwrap();
        assert_eq_el(&back, &a, "insert then counit");
    }
}

#[test]
fn counit_leg_projects_one_factor() {
    // counit on leg 0 of (e^{h p_0} tensor x^1) leaves x^1
    let e = p(0).mul_h(1).truncate_to(N).exp().unwrap();
    let t = e.tensor(&x(1)).unwrap();
    let got = t.counit_leg(0).unwrap();
    assert_eq_el(&got, &x(1), "counit on leg 0");
}

#[test]
fn tensor_product_is_legwise() {
    // (p_0 tensor x^0) * (x^0 tensor p_0) contracts in each leg independently
    let lhs = p(0).tensor(&x(0)).unwrap();
    let rhs = x(0).tensor(&p(0)).unwrap();
    let got = lhs.normal_product(&rhs).unwrap();
    let leg0 = p(0).normal_product(&x(0)).unwrap();
    let leg1 = x(0).normal_product(&p(0)).unwrap();
    assert_eq_el(&got, &leg0.tensor(&leg1).unwrap(), "legwise product");
}

// --- transpose ------------------------------------------------------------------

#[test]
fn transpose_reverses_letters() {
    // (x1 p1)^T = p1 x1 = x1 p1 - i
    let d = x(1).normal_product(&p(1)).unwrap();
    let got = d.transpose().unwrap();
    let expected = d
        .add(&NormalOrdered::scalar(1, N, &mp(), Scalar::minus_i()))
        .unwrap();
    assert_eq_el(&got, &expected, "(x1 p1)^T");

    // (x1 p1^2)^T = p1^2 x1 = x1 p1^2 - 2i p1
    let e = x(1).normal_product(&p(1).pow(2).unwrap()).unwrap();
    let got = e.transpose().unwrap();
    let expected = e
        .add(&p(1).scalar_mul(&Scalar::rational_i(-2, 1)))
        .unwrap();
    assert_eq_el(&got, &expected, "(x1 p1^2)^T");
}

#[test]
fn transpose_conjugates_scalars_and_is_involutive() {
    let a = x(1)
        .scalar_mul(&Scalar::i())
        .add(&p(2).pow(2).unwrap().scalar_mul(&Scalar::rational(3, 7)))
        .unwrap()
        .add(&gen(Generator::D).mul_h(2).truncate_to(N))
        .unwrap();
    let t = a.transpose().unwrap();
    assert_eq!(t.coefficient(0, [0, 1, 0, 0], [0; 4]), Scalar::minus_i());
    assert_eq_el(&t.transpose().unwrap(), &a, "double transpose");
}

#[test]
fn dilation_transpose_shift() {
    // D^T = D - 3i: one -i per spatial direction
    let d = gen(Generator::D);
    let got = d.transpose().unwrap();
    let expected = d
        .add(&NormalOrdered::scalar(1, N, &mp(), Scalar::rational_i(-3, 1)))
        .unwrap();
    assert_eq_el(&got, &expected, "D^T");
}

#[test]
fn lorentz_generators_are_hermitian() {
    for g in [
        Generator::Rot(1),
        Generator::Rot(2),
        Generator::Rot(3),
        Generator::Boost(1),
        Generator::Boost(2),
        Generator::Boost(3),
    ] {
        assert!(gen(g).is_hermitian().unwrap(), "{g:?} should be Hermitian");
    }
    assert!(!gen(Generator::L(0, 0)).is_hermitian().unwrap());
}

// --- exponentials and inverses -----------------------------------------------------

#[test]
fn exponential_matches_series_exponential() {
    let arg = p(0).mul_h(1).truncate_to(N);
    let el = arg.exp().unwrap();
    let s = arg.to_momentum_series().unwrap().exp().unwrap();
    let roundtrip = el.to_momentum_series().unwrap();
    assert!(roundtrip.sub(&s).unwrap().is_zero());
}

#[test]
fn exponential_inverse_pair() {
    let arg = p(0).mul_h(1).truncate_to(N);
    let u = arg.exp().unwrap();
    let v = arg.neg().exp().unwrap();
    let prod = u.normal_product(&v).unwrap();
    assert_eq_el(&prod, &NormalOrdered::one(1, N, &mp()), "exp(a) exp(-a)");
}

#[test]
fn geometric_inverse() {
    let a = NormalOrdered::one(1, N, &mp())
        .add(&p(0).mul_h(1).truncate_to(N).scalar_mul(&Scalar::rational(-2, 1)))
        .unwrap();
    let inv = a.invert().unwrap();
    assert_eq_el(
        &a.normal_product(&inv).unwrap(),
        &NormalOrdered::one(1, N, &mp()),
        "a a^{-1}",
    );
    assert!(p(0).invert().is_err());
    assert!(x(1).exp().is_err(), "exp of an uncapped h^0 element");
}

#[test]
fn nonunital_exponential_terminates_under_degree_cap() {
    // With a momentum-degree cap the exponent is graded nilpotent even at h^0.
    let capped = p(1).with_deg_cap(Some(3));
    let e = capped.exp().unwrap();
    assert_eq!(e.coefficient(0, [0; 4], [0; 4]), Scalar::from_int(1));
    assert_eq!(e.coefficient(0, [0; 4], [0, 3, 0, 0]), Scalar::rational(1, 6));
    assert!(e.coefficient(0, [0; 4], [0, 4, 0, 0]).is_zero());
}

// --- series import/export -----------------------------------------------------------

#[test]
fn momentum_series_roundtrip() {
    let vars = VarSet::standard(&["p0", "p2"], None).unwrap();
    let s = TruncSeries::one(&vars, N)
        .add(
            &TruncSeries::var(&vars, N, "p0")
                .unwrap()
                .mul(&TruncSeries::var(&vars, N, "p2").unwrap())
                .unwrap()
                .scalar_mul(&Scalar::rational(5, 3)),
        )
        .unwrap();
    let el = NormalOrdered::from_momentum_series(&s, &[("p0", 0), ("p2", 2)], &mp()).unwrap();
    assert_eq!(el.coefficient(0, [0; 4], [1, 0, 1, 0]), Scalar::rational(5, 3));
    let back = el.to_momentum_series().unwrap();
    // export uses the canonical four-name alphabet
    assert_eq!(back.vars().len(), 4);
    assert_eq!(
        back.coefficient(0, &[("p0", 1), ("p2", 1)]).unwrap(),
        Scalar::rational(5, 3)
    );
}

// --- bookkeeping ---------------------------------------------------------------------

#[test]
fn h_grading_helpers() {
    let a = p(0).mul_h(2);
    assert_eq!(a.h_order(), N + 2);
    assert_eq!(a.lowest_h_degree(), Some(2));
    let b = a.div_h(2).unwrap();
    assert_eq!(b.h_order(), N);
    assert_eq_el(&b, &p(0), "div_h undoes mul_h");
    assert!((NormalOrdered::zero(1, N, &mp())).lowest_h_degree().is_none());
    assert!(p(0).mul_h(1).truncate_to(N).ultra_norm() < 1.0);
}

#[test]
fn leg_mismatch_is_reported() {
    let a = p(0);
    let b = p(0).tensor(&p(1)).unwrap();
    assert!(matches!(a.add(&b), Err(WeylError::LegMismatch(_, _))));
}

#[test]
fn metric_mismatch_is_reported() {
    let a = NormalOrdered::p(0, N, &MetricSig::mostly_plus());
    let b = NormalOrdered::p(0, N, &MetricSig::mostly_minus());
    assert!(matches!(a.add(&b), Err(WeylError::MetricMismatch(_, _))));
}

#[test]
fn json_report_shape() {
    let v = gen(Generator::D).to_json_value().unwrap();
    assert!(v.get("h_order").is_some());
    assert!(v.get("metric").is_some());
    let terms = v.get("terms").unwrap().as_array().unwrap();
    assert_eq!(terms.len(), 3);
}

// --- signature independence -----------------------------------------------------------

#[test]
fn reduction_is_signature_independent() {
    for metric in [MetricSig::mostly_plus(), MetricSig::mostly_minus()] {
        let p1 = NormalOrdered::p(1, N, &metric);
        let x1 = NormalOrdered::x(1, N, &metric);
        let got = p1.normal_product(&x1).unwrap();
        assert_eq!(got.coefficient(0, [0; 4], [0; 4]), Scalar::minus_i());
        let d = igl_realize(Generator::D, N, &metric).unwrap();
        let c = d.commutator(&p1).unwrap();
        assert!(c.sub(&p1.scalar_mul(&Scalar::i())).unwrap().is_zero());
    }
}
