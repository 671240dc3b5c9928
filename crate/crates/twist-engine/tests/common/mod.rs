//! Shared fixtures for the twist-engine integration suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use series_core::Scalar;
use twist_engine::{Twist, TwistFamily};
use weyl_engine::{igl_realize, Generator, MetricSig, NormalOrdered};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn scalar_of(c: &BigRational) -> Scalar {
    Scalar::from_rational(c.clone())
}

pub fn metric() -> MetricSig {
    MetricSig::mostly_plus()
}

pub fn abelian((n, d): (i64, i64), w: u32) -> Twist {
    Twist::build(TwistFamily::Abelian { s: rat(n, d) }, w, &metric()).unwrap()
}

pub fn jordanian((n, d): (i64, i64), w: u32) -> Twist {
    Twist::build(TwistFamily::Jordanian { r: rat(n, d) }, w, &metric()).unwrap()
}

/// Antisymmetric constant matrix from its upper-triangle entries.
pub fn theta_matrix(entries: &[(usize, usize, (i64, i64))]) -> Box<[[BigRational; 4]; 4]> {
    let mut th: [[BigRational; 4]; 4] =
        std::array::from_fn(|_| std::array::from_fn(|_| rat(0, 1)));
    for &(mu, nu, (n, d)) in entries {
        th[mu][nu] = rat(n, d);
        th[nu][mu] = rat(-n, d);
    }
    Box::new(th)
}

pub fn theta(entries: &[(usize, usize, (i64, i64))], w: u32) -> Twist {
    Twist::build(TwistFamily::Theta { theta: theta_matrix(entries) }, w, &metric()).unwrap()
}

/// `x^mu` at the given truncation order.
pub fn xc(mu: usize, w: u32) -> NormalOrdered {
    NormalOrdered::x(mu, w, &metric())
}

/// `c · h^k · x^{xs} p^{ps}` on one leg.
pub fn mono(h: u32, xs: [u16; 4], ps: [u16; 4], c: Scalar, w: u32) -> NormalOrdered {
    NormalOrdered::monomial(h, xs, ps, c, w, &metric())
}

/// A symmetry generator in its operator form.
pub fn gen(g: Generator, w: u32) -> NormalOrdered {
    igl_realize(g, w, &metric()).unwrap()
}

/// `e^{c h P_0}` as a truncated exponential.
pub fn exp_h_p0(c: &BigRational, w: u32) -> NormalOrdered {
    let p0 = gen(Generator::P(0), w).mul_h(1).truncate_to(w);
    p0.scalar_mul(&scalar_of(c)).exp().unwrap()
}

/// `g (x) 1 + 1 (x) g`.
pub fn spread(g: &NormalOrdered) -> NormalOrdered {
    let left = g.insert_unit_leg(1).unwrap();
    let right = g.insert_unit_leg(0).unwrap();
    left.add(&right).unwrap()
}

/// Total position degree over all monomial exponents.
pub fn total_degree(m: &[u16; 4]) -> u16 {
    m.iter().sum()
}

/// All coordinate monomial exponents with total degree at most `max_deg`.
pub fn monomials_up_to(max_deg: u16) -> Vec<[u16; 4]> {
    let mut out = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=(max_deg - a) {
            for c in 0..=(max_deg - a - b) {
                for d in 0..=(max_deg - a - b - c) {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}
