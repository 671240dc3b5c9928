//! The Hopf-axiom battery.
//!
//! Runs every structural identity the coalgebra data must satisfy, for every
//! generator and every generator pair of a presentation, at the
//! presentation's truncation order. All residuals are exact rationals
//! collapsed to an ultrametric norm, so `pass` means *identically zero up to
//! the stated order*, not "small".

use crate::basis::{times_h, BasisKind, HopfSpec};
use crate::error::Result;
use crate::lorentz::LorentzGen;
use crate::report::AxiomReport;
use crate::tensor::CovTensor;

use series_core::Scalar;

/// Checks, per generator: coassociativity, both counit laws, both antipode
/// laws, and the squared antipode being conjugation by the group-like shift.
/// Per generator pair: compatibility of coproduct, counit, and antipode with
/// the commutator. The classical presentation gets extra rows for the shift
/// element itself, which is not a generator there.
pub fn check_hopf_axioms(spec: &HopfSpec) -> Result<AxiomReport> {
    let mut report = AxiomReport::new();
    let order = spec.h_order();
    let labels = spec.generator_labels();

    // Cache per generator: the tensor, its coproduct, and its antipode image.
    let gens: Vec<CovTensor> =
        labels.iter().map(|&l| spec.generator(l)).collect::<Result<_>>()?;
    let cops: Vec<CovTensor> =
        gens.iter().map(|g| g.delta_leg(0, spec)).collect::<Result<_>>()?;
    let antis: Vec<CovTensor> =
        gens.iter().map(|g| g.antipode_leg(0, spec)).collect::<Result<_>>()?;

    for (i, &label) in labels.iter().enumerate() {
        let name = spec.label_name(label);
        let g = &gens[i];
        let cop = &cops[i];

        let left = cop.delta_leg(0, spec)?;
        let right = cop.delta_leg(1, spec)?;
        report.push("coassociativity", &name, order, left.residual(&right)?);

        report.push("counit-left", &name, order, cop.counit_leg(0, spec)?.residual(g)?);
        report.push("counit-right", &name, order, cop.counit_leg(1, spec)?.residual(g)?);

        let target = CovTensor::one(spec, 1).scalar_mul(&spec.counit_of(label));
        let s_left = cop.antipode_leg(0, spec)?.merge_legs(spec)?;
        report.push("antipode-left", &name, order, s_left.residual(&target)?);
        let s_right = cop.antipode_leg(1, spec)?.merge_legs(spec)?;
        report.push("antipode-right", &name, order, s_right.residual(&target)?);

        // S^2 = (conjugation by the shift).
        let s2 = antis[i].antipode_leg(0, spec)?;
        let conj = CovTensor::from_series(spec, 1, spec.shift_series())?
            .mul(g, spec)?
            .mul(&CovTensor::from_series(spec, 1, spec.shift_inverse())?, spec)?;
        report.push("antipode-square-shift-conjugation", &name, order, s2.residual(&conj)?);
    }

    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            let pair = format!("{},{}", spec.label_name(labels[i]), spec.label_name(labels[j]));
            let comm = gens[i].commutator(&gens[j], spec)?;

            let lhs = comm.delta_leg(0, spec)?;
            let rhs = cops[i].commutator(&cops[j], spec)?;
            report.push("coproduct-commutator-compatibility", &pair, order, lhs.residual(&rhs)?);

            let eps = comm.counit_scalar(spec)?;
            report.push("counit-commutator-compatibility", &pair, order, eps.ultra_norm());

            // S is an anti-homomorphism: S([A,B]) = -[S(A), S(B)].
            let s_comm = comm.antipode_leg(0, spec)?;
            let comm_s = antis[i].commutator(&antis[j], spec)?;
            report.push(
                "antipode-anticommutativity",
                &pair,
                order,
                s_comm.add(&comm_s)?.ultra_norm(),
            );
        }
    }

    if matches!(spec.kind(), BasisKind::Classical) {
        report.extend(classical_shift_rows(spec)?);
    }

    Ok(report)
}

/// Rows for the classical presentation's shift element `Xi`, which is a
/// derived series rather than a generator: its group-like coproduct, inverse
/// antipode, unit counit, the coproduct of the square root it contains, and
/// its commutator with a boost.
fn classical_shift_rows(spec: &HopfSpec) -> Result<AxiomReport> {
    let mut report = AxiomReport::new();
    let order = spec.h_order();
    let xi = spec.shift_series();
    let xi_inv = spec.shift_inverse();

    let xi_a = spec.to_leg(xi, 2, 0)?;
    let xi_b = spec.to_leg(xi, 2, 1)?;
    let grouplike = xi_a.mul(&xi_b)?;
    report.push(
        "coproduct-shift-group-like",
        "Xi",
        order,
        spec.cop_series(xi)?.sub(&grouplike)?.ultra_norm(),
    );
    report.push(
        "antipode-shift-inverse",
        "Xi",
        order,
        spec.antipode_series(xi)?.sub(xi_inv)?.ultra_norm(),
    );
    let eps = spec.counit_series(xi)?;
    let one = series_core::TruncSeries::one(eps.vars(), eps.h_order());
    report.push("counit-shift", "Xi", order, eps.sub(&one)?.ultra_norm());

    // root = Xi - h p0 = sqrt(1 + h^2 (p0^2 - |p|^2)); its coproduct follows
    // from the group-like shift and the energy coproduct:
    //   cop(root) = root (x) Xi - h Xi^{-1} (x) p0 - h^2 p_m Xi^{-1} (x) p_m.
    let p0 = spec.base_series(0)?;
    let root = xi.sub(&times_h(&p0, 1)?)?;
    let mut expect = spec.to_leg(&root, 2, 0)?.mul(&xi_b)?;
    let xi_inv_a = spec.to_leg(xi_inv, 2, 0)?;
    let p0_b = spec.to_leg(&p0, 2, 1)?;
    expect = expect.sub(&times_h(&xi_inv_a.mul(&p0_b)?, 1)?)?;
    for m in 1..=3 {
        let pm = spec.base_series(m)?;
        let cross = spec.to_leg(&pm, 2, 0)?.mul(&xi_inv_a)?.mul(&spec.to_leg(&pm, 2, 1)?)?;
        expect = expect.sub(&times_h(&cross, 2)?)?;
    }
    report.push(
        "coproduct-shift-root",
        "Xi",
        order,
        spec.cop_series(&root)?.sub(&expect)?.ultra_norm(),
    );

    // [N_j, Xi] = -i h p_j.
    for j in 1..=3u8 {
        let lhs = CovTensor::ad_on_series(spec, LorentzGen::N(j), 1, 0, xi)?;
        let rhs = times_h(&spec.base_series(j as usize)?, 1)?.scalar_mul(&Scalar::minus_i());
        report.push(
            "boost-shift-commutator",
            &format!("N{j},Xi"),
            order,
            lhs.sub(&rhs)?.ultra_norm(),
        );
    }

    Ok(report)
}
