//! The deformed phase-space algebra: noncommutative coordinates crossed with
//! the deformed symmetry generators, verified on concrete operator
//! realizations.
//!
//! A [`DsrRecord`] packages one realization — coordinates, momenta,
//! rotations, boosts, the group-like shift, and the deformed quadratic
//! invariant — as normal-ordered phase-space operators. [`verify_dsr`] then
//! evaluates every defining relation of the crossed algebra on the record and
//! reports exact residuals:
//!
//! ```text
//! [X^0, X^i] = i h X^i                 [X^j, X^k] = 0
//! [M_i, X^0] = 0                       [N_i, X^0] = i X^i + i h N_i
//! [M_i, X^j] = i eps_{ijk} X^k         [N_i, X^j] = i delta_ij X^0 + i h eps_{ijk} M_k
//! [P_k, X^0] = 0                       [P_k, X^j] = -i delta_jk Xi
//! [P_0, X^j] = -i h P_j                [P_0, X^0] = -i (Xi - h P_0)
//! ```
//!
//! (upper-index coordinates; lowering the time index with the mostly-plus
//! metric gives the familiar `[X_0, X_j] = -i h X_j` form). The battery also
//! re-checks the rotation/boost/momentum sector, the covariant form of the
//! Lorentz-coordinate rules, the composition law expressing the shift through
//! the realized momenta, and the classical limit.
//!
//! The Snyder change of coordinates and the deformed-invariant rows live in
//! [`snyder_rows`] and [`casimir_rows`]. [`verify_qanalog_grounding`] drives
//! the whole battery for the two-function realization family and then pins
//! the shift-basis presentation to it: with `Pi0 := BigPsi^{-1}` the realized
//! generators satisfy, exactly,
//!
//! ```text
//! [X^0, Pi0] = i h Pi0                 [X^j, Pi0] = 0
//! P_0 = (Pi0 - Pi0^{-1})/(2h) + (h/2) Pvec^2 Pi0^{-1}
//! [N_j, P_k] = -(i/2) delta_jk ( (Pi0 - Pi0^{-1})/h + h Pvec^2 Pi0^{-1} )
//! C   = (Pi0 + Pi0^{-1} - 2)/h^2 - Pvec^2 Pi0^{-1}
//! ```
//!
//! which are the defining relations of the shift-basis presentation with
//! `kappa = 1/h`.

use num_rational::BigRational;
use series_core::{Scalar, TruncSeries, VarSet};
use weyl_engine::{
    igl_realize, natural_realization, realize_noncovariant, Generator, MetricSig, NormalOrdered,
};

use crate::error::{HopfError, Result};
use crate::report::AxiomReport;

/// One operator realization of the deformed phase-space algebra.
#[derive(Debug, Clone)]
pub struct DsrRecord {
    pub h_order: u32,
    pub metric: MetricSig,
    /// Deformed coordinates `X^0..X^3` (upper indices).
    pub x: [NormalOrdered; 4],
    /// Momentum generators `P_0..P_3` (lower indices).
    pub p: [NormalOrdered; 4],
    /// Rotations `M_1..M_3`.
    pub rot: [NormalOrdered; 3],
    /// Boosts `N_1..N_3`.
    pub boost: [NormalOrdered; 3],
    /// The group-like shift `Xi = h P_0 + sqrt(1 + h^2(P_0^2 - Pvec^2))`,
    /// composed with the realized momenta.
    pub shift: NormalOrdered,
    /// Deformed quadratic invariant, classical limit `p_0^2 - |p|^2`.
    pub casimir: NormalOrdered,
    /// Human-readable tag for reports.
    pub label: String,
}

/// Field-by-field assembly of a [`DsrRecord`]; [`DsrParts::build`] reports
/// the first missing piece instead of panicking.
#[derive(Debug, Clone, Default)]
pub struct DsrParts {
    pub h_order: Option<u32>,
    pub metric: Option<MetricSig>,
    pub x: Option<[NormalOrdered; 4]>,
    pub p: Option<[NormalOrdered; 4]>,
    pub rot: Option<[NormalOrdered; 3]>,
    pub boost: Option<[NormalOrdered; 3]>,
    pub shift: Option<NormalOrdered>,
    pub casimir: Option<NormalOrdered>,
    pub label: Option<String>,
}

impl DsrParts {
    pub fn build(self) -> Result<DsrRecord> {
        Ok(DsrRecord {
            h_order: self.h_order.ok_or(HopfError::IncompleteRecord("h_order"))?,
            metric: self.metric.ok_or(HopfError::IncompleteRecord("metric"))?,
            x: self.x.ok_or(HopfError::IncompleteRecord("coordinates"))?,
            p: self.p.ok_or(HopfError::IncompleteRecord("momenta"))?,
            rot: self.rot.ok_or(HopfError::IncompleteRecord("rotations"))?,
            boost: self.boost.ok_or(HopfError::IncompleteRecord("boosts"))?,
            shift: self.shift.ok_or(HopfError::IncompleteRecord("shift"))?,
            casimir: self.casimir.ok_or(HopfError::IncompleteRecord("casimir"))?,
            label: self.label.ok_or(HopfError::IncompleteRecord("label"))?,
        })
    }
}

fn require_mostly_plus(metric: &MetricSig) -> Result<()> {
    if *metric != MetricSig::mostly_plus() {
        return Err(HopfError::Invalid(
            "the deformed phase-space tables are written for the mostly-plus metric".into(),
        ));
    }
    Ok(())
}

/// `h^k * e`, keeping the original truncation order.
fn times_h_el(e: &NormalOrdered, k: u32) -> NormalOrdered {
    let n = e.h_order();
    e.mul_h(k).truncate_to(n)
}

fn pvars() -> std::sync::Arc<VarSet> {
    VarSet::standard(&["p0", "p1", "p2", "p3"], None).expect("fixed alphabet")
}

const PBIND: [(&str, usize); 4] = [("p0", 0), ("p1", 1), ("p2", 2), ("p3", 3)];

/// The shift series `h q_0 + sqrt(1 + h^2 (q_0^2 - qvec^2))` composed with
/// arbitrary (commuting, regular) momentum series `q_mu`.
fn shift_of_momenta(q: &[TruncSeries; 4]) -> Result<TruncSeries> {
    let mut disp = q[0].mul(&q[0])?;
    for qk in &q[1..] {
        disp = disp.sub(&qk.mul(qk)?)?;
    }
    let one = TruncSeries::one(disp.vars(), disp.h_order());
    let root = one
        .add(&disp.mul_h(2).truncate_to(disp.h_order())?)?
        .pow_fractional(&BigRational::new(1.into(), 2.into()))?;
    root.add(&q[0].mul_h(1).truncate_to(q[0].h_order())?)
}

/// The natural realization: undeformed momenta and Lorentz generators, with
/// the deformation carried entirely by the coordinates.
pub fn natural_record(h_order: u32, metric: &MetricSig) -> Result<DsrRecord> {
    require_mostly_plus(metric)?;
    let nat = natural_realization(h_order, metric)?;
    let q: [TruncSeries; 4] = [
        nat.p[0].to_momentum_series()?,
        nat.p[1].to_momentum_series()?,
        nat.p[2].to_momentum_series()?,
        nat.p[3].to_momentum_series()?,
    ];
    let shift = NormalOrdered::from_momentum_series(&shift_of_momenta(&q)?, &PBIND, metric)?;
    Ok(DsrRecord {
        h_order,
        metric: metric.clone(),
        x: nat.x,
        p: nat.p,
        rot: [
            igl_realize(Generator::Rot(1), h_order, metric)?,
            igl_realize(Generator::Rot(2), h_order, metric)?,
            igl_realize(Generator::Rot(3), h_order, metric)?,
        ],
        boost: [
            igl_realize(Generator::Boost(1), h_order, metric)?,
            igl_realize(Generator::Boost(2), h_order, metric)?,
            igl_realize(Generator::Boost(3), h_order, metric)?,
        ],
        shift,
        casimir: nat.casimir,
        label: "natural".into(),
    })
}

/// A member of the two-function realization family, from the Taylor
/// coefficients of `psi` (constant term 1) and `gamma`. The shift is
/// `BigPsi^{-1}`, which the composition row of [`verify_dsr`] confirms
/// against the closed form in the realized momenta.
pub fn noncovariant_record(
    psi: &[BigRational],
    gamma: &[BigRational],
    h_order: u32,
    metric: &MetricSig,
    label: &str,
) -> Result<DsrRecord> {
    require_mostly_plus(metric)?;
    let r = realize_noncovariant(psi, gamma, h_order, metric)?;
    let shift_series = r.big_psi_tilde.invert()?;
    let shift = NormalOrdered::from_momentum_series(&shift_series, &PBIND, metric)?;
    Ok(DsrRecord {
        h_order,
        metric: metric.clone(),
        x: r.x,
        p: r.p,
        rot: r.rot,
        boost: r.boost,
        shift,
        casimir: r.casimir,
        label: label.into(),
    })
}

impl DsrRecord {
    /// Coordinate with the index lowered: `X_0 = -X^0`, `X_j = X^j`.
    fn x_lower(&self, mu: usize) -> NormalOrdered {
        if mu == 0 {
            self.x[0].neg()
        } else {
            self.x[mu].clone()
        }
    }

    /// Lorentz generator `M_{mu nu}` (both indices lowered) assembled from
    /// the record's own rotations and boosts.
    fn m_lower(&self, mu: usize, nu: usize) -> NormalOrdered {
        let zero = NormalOrdered::zero(1, self.h_order, &self.metric);
        match (mu, nu) {
            (0, j) if j > 0 => self.boost[j - 1].clone(),
            (j, 0) if j > 0 => self.boost[j - 1].neg(),
            (i, j) if i > 0 && j > 0 && i != j => {
                let mut acc = zero;
                for (k, r) in self.rot.iter().enumerate() {
                    let e = weyl_engine::epsilon3(i, j, k + 1);
                    if e != 0 {
                        acc = acc.add(&r.scalar_mul(&Scalar::rational(e, 1))).expect("same shape");
                    }
                }
                acc
            }
            _ => zero,
        }
    }
}

/// The crossed-algebra battery: symmetry-sector closure, coordinate algebra,
/// all cross-commutation rules (componentwise and in covariant form), the
/// shift composition law, the shift-boost commutator, and the classical
/// limit. Residuals are exact.
pub fn verify_dsr(rec: &DsrRecord) -> Result<AxiomReport> {
    require_mostly_plus(&rec.metric)?;
    let mut report = AxiomReport::new();
    let n = rec.h_order;
    let i_s = Scalar::i();
    let minus_i = Scalar::minus_i();
    let eps = weyl_engine::epsilon3;

    let row = |report: &mut AxiomReport,
                   axiom: &str,
                   gens: String,
                   lhs: &NormalOrdered,
                   rhs: &NormalOrdered|
     -> Result<()> {
        report.push(axiom, &gens, n, lhs.sub(rhs)?.ultra_norm());
        Ok(())
    };

    // Rotation/boost closure.
    for i in 1..=3usize {
        for j in 1..=3usize {
            if i < j {
                let mut rhs = NormalOrdered::zero(1, n, &rec.metric);
                for k in 1..=3 {
                    let e = eps(i, j, k);
                    if e != 0 {
                        rhs = rhs.add(&rec.rot[k - 1].scalar_mul(&Scalar::rational_i(e, 1)))?;
                    }
                }
                let lhs = rec.rot[i - 1].commutator(&rec.rot[j - 1])?;
                row(&mut report, "lorentz-closure", format!("M{i},M{j}"), &lhs, &rhs)?;

                let mut rhs_b = NormalOrdered::zero(1, n, &rec.metric);
                for k in 1..=3 {
                    let e = eps(i, j, k);
                    if e != 0 {
                        rhs_b = rhs_b.add(&rec.rot[k - 1].scalar_mul(&Scalar::rational_i(-e, 1)))?;
                    }
                }
                let lhs_b = rec.boost[i - 1].commutator(&rec.boost[j - 1])?;
                row(&mut report, "lorentz-closure", format!("N{i},N{j}"), &lhs_b, &rhs_b)?;
            }
            let mut rhs = NormalOrdered::zero(1, n, &rec.metric);
            for k in 1..=3 {
                let e = eps(i, j, k);
                if e != 0 {
                    rhs = rhs.add(&rec.boost[k - 1].scalar_mul(&Scalar::rational_i(e, 1)))?;
                }
            }
            let lhs = rec.rot[i - 1].commutator(&rec.boost[j - 1])?;
            row(&mut report, "lorentz-closure", format!("M{i},N{j}"), &lhs, &rhs)?;
        }
    }

    // Momentum sector.
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let lhs = rec.p[mu].commutator(&rec.p[nu])?;
            let rhs = NormalOrdered::zero(1, n, &rec.metric);
            row(&mut report, "momentum-commutativity", format!("P{mu},P{nu}"), &lhs, &rhs)?;
        }
    }
    for j in 1..=3usize {
        let lhs = rec.rot[j - 1].commutator(&rec.p[0])?;
        let rhs = NormalOrdered::zero(1, n, &rec.metric);
        row(&mut report, "rotation-momentum", format!("M{j},P0"), &lhs, &rhs)?;
        for k in 1..=3usize {
            let mut rhs = NormalOrdered::zero(1, n, &rec.metric);
            for l in 1..=3 {
                let e = eps(j, k, l);
                if e != 0 {
                    rhs = rhs.add(&rec.p[l].scalar_mul(&Scalar::rational_i(e, 1)))?;
                }
            }
            let lhs = rec.rot[j - 1].commutator(&rec.p[k])?;
            row(&mut report, "rotation-momentum", format!("M{j},P{k}"), &lhs, &rhs)?;
        }
    }
    for j in 1..=3usize {
        for k in 1..=3usize {
            let lhs = rec.boost[j - 1].commutator(&rec.p[k])?;
            let rhs = if j == k {
                rec.p[0].scalar_mul(&minus_i)
            } else {
                NormalOrdered::zero(1, n, &rec.metric)
            };
            row(&mut report, "boost-momentum", format!("N{j},P{k}"), &lhs, &rhs)?;
        }
        let lhs = rec.boost[j - 1].commutator(&rec.p[0])?;
        let rhs = rec.p[j].scalar_mul(&minus_i);
        row(&mut report, "boost-momentum", format!("N{j},P0"), &lhs, &rhs)?;
    }

    // Coordinate algebra: [X^0, X^i] = i h X^i, spatial coordinates commute.
    for i in 1..=3usize {
        let lhs = rec.x[0].commutator(&rec.x[i])?;
        let rhs = times_h_el(&rec.x[i], 1).scalar_mul(&i_s);
        row(&mut report, "coordinate-algebra", format!("X0,X{i}"), &lhs, &rhs)?;
    }
    for j in 1..=3usize {
        for k in (j + 1)..=3usize {
            let lhs = rec.x[j].commutator(&rec.x[k])?;
            let rhs = NormalOrdered::zero(1, n, &rec.metric);
            row(&mut report, "coordinate-algebra", format!("X{j},X{k}"), &lhs, &rhs)?;
        }
    }

    // Rotations and boosts against coordinates.
    for i in 1..=3usize {
        let lhs = rec.rot[i - 1].commutator(&rec.x[0])?;
        let rhs = NormalOrdered::zero(1, n, &rec.metric);
        row(&mut report, "rotation-coordinate", format!("M{i},X0"), &lhs, &rhs)?;
        for j in 1..=3usize {
            let mut rhs = NormalOrdered::zero(1, n, &rec.metric);
            for k in 1..=3 {
                let e = eps(i, j, k);
                if e != 0 {
                    rhs = rhs.add(&rec.x[k].scalar_mul(&Scalar::rational_i(e, 1)))?;
                }
            }
            let lhs = rec.rot[i - 1].commutator(&rec.x[j])?;
            row(&mut report, "rotation-coordinate", format!("M{i},X{j}"), &lhs, &rhs)?;
        }
    }
    for i in 1..=3usize {
        // [N_i, X^0] = i X^i + i h N_i
        let lhs = rec.boost[i - 1].commutator(&rec.x[0])?;
        let rhs = rec.x[i]
            .scalar_mul(&i_s)
            .add(&times_h_el(&rec.boost[i - 1], 1).scalar_mul(&i_s))?;
        row(&mut report, "boost-coordinate", format!("N{i},X0"), &lhs, &rhs)?;
        // [N_i, X^j] = i delta_ij X^0 + i h eps_ijk M_k
        for j in 1..=3usize {
            let mut rhs = NormalOrdered::zero(1, n, &rec.metric);
            if i == j {
                rhs = rhs.add(&rec.x[0].scalar_mul(&i_s))?;
            }
            for k in 1..=3 {
                let e = eps(i, j, k);
                if e != 0 {
                    rhs = rhs
                        .add(&times_h_el(&rec.rot[k - 1], 1).scalar_mul(&Scalar::rational_i(e, 1)))?;
                }
            }
            let lhs = rec.boost[i - 1].commutator(&rec.x[j])?;
            row(&mut report, "boost-coordinate", format!("N{i},X{j}"), &lhs, &rhs)?;
        }
    }

    // The same rules in covariant form, all indices lowered:
    //   [M_{mu nu}, X_lam] = i eta_{mu lam} X_nu - i eta_{nu lam} X_mu
    //                        - i h a_mu M_{nu lam} + i h a_nu M_{mu lam}
    // with a = (eta_00, 0, 0, 0).
    let a_lower: [i64; 4] = [rec.metric.eta(0) as i64, 0, 0, 0];
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            for lam in 0..4 {
                let lhs = rec.m_lower(mu, nu).commutator(&rec.x_lower(lam))?;
                let mut rhs = NormalOrdered::zero(1, n, &rec.metric);
                if mu == lam {
                    rhs = rhs.add(
                        &rec.x_lower(nu).scalar_mul(&Scalar::rational_i(rec.metric.eta(mu) as i64, 1)),
                    )?;
                }
                if nu == lam {
                    rhs = rhs.add(
                        &rec.x_lower(mu)
                            .scalar_mul(&Scalar::rational_i(-(rec.metric.eta(nu) as i64), 1)),
                    )?;
                }
                if a_lower[mu] != 0 {
                    rhs = rhs.add(
                        &times_h_el(&rec.m_lower(nu, lam), 1)
                            .scalar_mul(&Scalar::rational_i(-a_lower[mu], 1)),
                    )?;
                }
                if a_lower[nu] != 0 {
                    rhs = rhs.add(
                        &times_h_el(&rec.m_lower(mu, lam), 1)
                            .scalar_mul(&Scalar::rational_i(a_lower[nu], 1)),
                    )?;
                }
                row(
                    &mut report,
                    "lorentz-coordinate-covariant",
                    format!("M{mu}{nu},X{lam}"),
                    &lhs,
                    &rhs,
                )?;
            }
        }
    }

    // Momenta against coordinates; the shift appears on the right-hand side.
    let root = rec.shift.sub(&times_h_el(&rec.p[0], 1))?; // sqrt(1 + h^2(p0^2 - |p|^2))
    for k in 1..=3usize {
        let lhs = rec.p[k].commutator(&rec.x[0])?;
        let rhs = NormalOrdered::zero(1, n, &rec.metric);
        row(&mut report, "momentum-coordinate", format!("P{k},X0"), &lhs, &rhs)?;
        for j in 1..=3usize {
            let lhs = rec.p[k].commutator(&rec.x[j])?;
            let rhs = if j == k {
                rec.shift.scalar_mul(&minus_i)
            } else {
                NormalOrdered::zero(1, n, &rec.metric)
            };
            row(&mut report, "momentum-coordinate", format!("P{k},X{j}"), &lhs, &rhs)?;
        }
    }
    for j in 1..=3usize {
        let lhs = rec.p[0].commutator(&rec.x[j])?;
        let rhs = times_h_el(&rec.p[j], 1).scalar_mul(&minus_i);
        row(&mut report, "momentum-coordinate", format!("P0,X{j}"), &lhs, &rhs)?;
    }
    {
        let lhs = rec.p[0].commutator(&rec.x[0])?;
        let rhs = root.scalar_mul(&minus_i);
        row(&mut report, "momentum-coordinate", "P0,X0".into(), &lhs, &rhs)?;
    }

    // The shift is the fixed composition of the realized momenta.
    {
        let q: [TruncSeries; 4] = [
            rec.p[0].to_momentum_series()?,
            rec.p[1].to_momentum_series()?,
            rec.p[2].to_momentum_series()?,
            rec.p[3].to_momentum_series()?,
        ];
        let expect = shift_of_momenta(&q)?;
        let got = rec.shift.to_momentum_series()?;
        report.push("shift-composition", &rec.label, n, got.sub(&expect)?.ultra_norm());
    }

    // [N_i, Xi] = -i h P_i.
    for i in 1..=3usize {
        let lhs = rec.boost[i - 1].commutator(&rec.shift)?;
        let rhs = times_h_el(&rec.p[i], 1).scalar_mul(&minus_i);
        row(&mut report, "shift-boost", format!("N{i},Xi"), &lhs, &rhs)?;
    }

    // h -> 0: undeformed phase space and symmetry generators.
    {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            let rx = rec.x[mu].truncate_to(0).sub(&NormalOrdered::x(mu, 0, &rec.metric))?;
            let rp = rec.p[mu].truncate_to(0).sub(&NormalOrdered::p(mu, 0, &rec.metric))?;
            worst = worst.max(rx.ultra_norm()).max(rp.ultra_norm());
        }
        for i in 1..=3usize {
            let rr = rec.rot[i - 1]
                .truncate_to(0)
                .sub(&igl_realize(Generator::Rot(i), 0, &rec.metric)?)?;
            let rb = rec.boost[i - 1]
                .truncate_to(0)
                .sub(&igl_realize(Generator::Boost(i), 0, &rec.metric)?)?;
            worst = worst.max(rr.ultra_norm()).max(rb.ultra_norm());
        }
        let rs = rec
            .shift
            .truncate_to(0)
            .sub(&NormalOrdered::one(1, 0, &rec.metric))?;
        worst = worst.max(rs.ultra_norm());
        report.push("classical-limit", &rec.label, 0, worst);
    }

    Ok(report)
}

/// The Snyder change of coordinates `Xt_0 = X_0`, `Xt_j = X_j + h N_j` and
/// the algebra it closes into, with `M = sqrt(1 + h^2(P_0^2 - Pvec^2))`
/// central among the momenta:
///
/// ```text
/// [P_mu, Xt_nu]  = -i eta_{mu nu} M
/// [Xt_mu, Xt_nu] =  i h^2 M_{mu nu}
/// [Xt_mu, M]     = -i h^2 P_mu
/// ```
pub fn snyder_rows(rec: &DsrRecord) -> Result<AxiomReport> {
    require_mostly_plus(&rec.metric)?;
    let mut report = AxiomReport::new();
    let n = rec.h_order;
    let minus_i = Scalar::minus_i();

    // Lowered Snyder coordinates.
    let xt: [NormalOrdered; 4] = [
        rec.x_lower(0),
        rec.x[1].add(&times_h_el(&rec.boost[0], 1))?,
        rec.x[2].add(&times_h_el(&rec.boost[1], 1))?,
        rec.x[3].add(&times_h_el(&rec.boost[2], 1))?,
    ];
    let central = rec.shift.sub(&times_h_el(&rec.p[0], 1))?;

    for mu in 0..4 {
        for nu in 0..4 {
            let lhs = rec.p[mu].commutator(&xt[nu])?;
            let rhs = if mu == nu {
                central.scalar_mul(&Scalar::rational_i(-(rec.metric.eta(mu) as i64), 1))
            } else {
                NormalOrdered::zero(1, n, &rec.metric)
            };
            report.push(
                "snyder-momentum-coordinate",
                &format!("P{mu},Xt{nu}"),
                n,
                lhs.sub(&rhs)?.ultra_norm(),
            );
        }
    }

    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let lhs = xt[mu].commutator(&xt[nu])?;
            let rhs = times_h_el(&rec.m_lower(mu, nu), 2).scalar_mul(&Scalar::i());
            report.push(
                "snyder-coordinate-algebra",
                &format!("Xt{mu},Xt{nu}"),
                n,
                lhs.sub(&rhs)?.ultra_norm(),
            );
        }
    }

    for mu in 0..4 {
        let lhs = xt[mu].commutator(&central)?;
        let rhs = times_h_el(&rec.p[mu], 2).scalar_mul(&minus_i);
        report.push(
            "snyder-coordinate-central",
            &format!("Xt{mu},M"),
            n,
            lhs.sub(&rhs)?.ultra_norm(),
        );
    }

    Ok(report)
}

/// Rows for the deformed quadratic invariant on a realization: the classical
/// commutation property `[C_h, X_mu] = 2 i P_mu` (lowered coordinate index),
/// centrality against every symmetry generator, the exact inversion
/// `p_0^2 - |p|^2 = C_h (1 + h^2 C_h / 4)`, and its leading orders.
pub fn casimir_rows(rec: &DsrRecord) -> Result<AxiomReport> {
    require_mostly_plus(&rec.metric)?;
    let mut report = AxiomReport::new();
    let n = rec.h_order;
    let c = &rec.casimir;
    let two_i = Scalar::rational_i(2, 1);

    for mu in 0..4 {
        let lhs = c.commutator(&rec.x_lower(mu))?;
        let rhs = rec.p[mu].scalar_mul(&two_i);
        report.push(
            "casimir-coordinate",
            &format!("C,X{mu}"),
            n,
            lhs.sub(&rhs)?.ultra_norm(),
        );
    }

    for mu in 0..4 {
        let lhs = c.commutator(&rec.p[mu])?;
        report.push("casimir-centrality", &format!("C,P{mu}"), n, lhs.ultra_norm());
    }
    for i in 1..=3usize {
        let lr = c.commutator(&rec.rot[i - 1])?;
        report.push("casimir-centrality", &format!("C,M{i}"), n, lr.ultra_norm());
        let lb = c.commutator(&rec.boost[i - 1])?;
        report.push("casimir-centrality", &format!("C,N{i}"), n, lb.ultra_norm());
    }

    // d := p_0^2 - |p|^2 in the realized momenta equals C (1 + h^2 C / 4).
    let cs = c.to_momentum_series()?;
    let q: [TruncSeries; 4] = [
        rec.p[0].to_momentum_series()?,
        rec.p[1].to_momentum_series()?,
        rec.p[2].to_momentum_series()?,
        rec.p[3].to_momentum_series()?,
    ];
    let mut d = q[0].mul(&q[0])?;
    for qk in &q[1..] {
        d = d.sub(&qk.mul(qk)?)?;
    }
    let c_sq_h2 = cs
        .mul(&cs)?
        .mul_h(2)
        .truncate_to(n)?
        .scalar_mul(&Scalar::rational(1, 4));
    let rhs = cs.add(&c_sq_h2)?;
    report.push("casimir-inversion", &rec.label, n, d.sub(&rhs)?.ultra_norm());

    // Leading orders of the inverse: C = d - h^2 d^2/4 + O(h^4).
    let lead = d
        .sub(&d.mul(&d)?.mul_h(2).truncate_to(n)?.scalar_mul(&Scalar::rational(1, 4)))?
        .truncate_to(3.min(n))?;
    report.push(
        "casimir-leading-order",
        &rec.label,
        3.min(n),
        cs.truncate_to(3.min(n))?.sub(&lead)?.ultra_norm(),
    );

    Ok(report)
}

/// Physical mass squared as a polynomial in the squared deformation
/// parameter: for a deformed mass `m` (so `C_h = -m^2` on shell), the
/// undeformed invariant is `-m_ph^2` with
///
/// ```text
/// m_ph^2 = m^2 - (m^4/4) h^2 .
/// ```
///
/// Returns the pair `(h^0 coefficient, h^2 coefficient)`.
pub fn mass_relation(m_def_sq: &BigRational) -> (BigRational, BigRational) {
    let quarter = BigRational::new(1.into(), 4.into());
    (m_def_sq.clone(), -(m_def_sq * m_def_sq) * quarter)
}

/// Grounds the shift-basis presentation in the two-function realization
/// family: runs the full crossed-algebra battery on the record, then checks
/// the shift-basis defining relations with `Pi0 := BigPsi^{-1}` realized as
/// an operator. See the module docs for the row list.
pub fn verify_qanalog_grounding(
    psi: &[BigRational],
    gamma: &[BigRational],
    h_order: u32,
    metric: &MetricSig,
    label: &str,
) -> Result<AxiomReport> {
    require_mostly_plus(metric)?;
    if h_order < 2 {
        return Err(HopfError::Invalid(
            "shift-basis grounding needs at least two orders (two are spent on 1/h^2)".into(),
        ));
    }
    let rec = noncovariant_record(psi, gamma, h_order, metric, label)?;
    let mut report = verify_dsr(&rec)?;
    let n = h_order;
    let i_s = Scalar::i();

    let pi0 = &rec.shift;
    let pi0_inv = pi0.invert()?;

    // [X^0, Pi0] = i h Pi0, spatial coordinates commute with Pi0.
    {
        let lhs = rec.x[0].commutator(pi0)?;
        let rhs = times_h_el(pi0, 1).scalar_mul(&i_s);
        report.push("shift-coordinate-time", "X0,Pi0", n, lhs.sub(&rhs)?.ultra_norm());
    }
    for j in 1..=3usize {
        let lhs = rec.x[j].commutator(pi0)?;
        report.push(
            "shift-coordinate-space",
            &format!("X{j},Pi0"),
            n,
            lhs.ultra_norm(),
        );
    }

    // Pi0 X^0 Pi0^{-1} = X^0 - i h.
    {
        let lhs = pi0.normal_product(&rec.x[0])?.normal_product(&pi0_inv)?;
        let ih = times_h_el(&NormalOrdered::one(1, n, metric), 1).scalar_mul(&i_s);
        let rhs = rec.x[0].sub(&ih)?;
        report.push("shift-conjugation", "X0", n, lhs.sub(&rhs)?.ultra_norm());
    }

    // Series-level shift-basis forms in the realized momenta.
    let s = pi0.to_momentum_series()?;
    let s_inv = s.invert()?;
    let q: [TruncSeries; 4] = [
        rec.p[0].to_momentum_series()?,
        rec.p[1].to_momentum_series()?,
        rec.p[2].to_momentum_series()?,
        rec.p[3].to_momentum_series()?,
    ];
    let mut q_sp_sq = TruncSeries::zero(&pvars(), n);
    for qk in &q[1..] {
        q_sp_sq = q_sp_sq.add(&qk.mul(qk)?)?;
    }
    let half = Scalar::rational(1, 2);

    // P_0 = (Pi0 - Pi0^{-1})/(2h) + (h/2) Pvec^2 Pi0^{-1}, exact to n-1.
    {
        let sing = s.sub(&s_inv)?.div_h(1)?.scalar_mul(&half);
        let reg = q_sp_sq
            .mul(&s_inv)?
            .mul_h(1)
            .truncate_to(n - 1)?
            .scalar_mul(&half);
        let rhs = sing.add(&reg)?;
        let lhs = q[0].truncate_to(n - 1)?;
        report.push("energy-shift-form", "P0", n - 1, lhs.sub(&rhs)?.ultra_norm());
    }

    // [N_j, P_k] = -(i/2) delta_jk ( (Pi0 - Pi0^{-1})/h + h Pvec^2 Pi0^{-1} ).
    for j in 1..=3usize {
        for k in 1..=3usize {
            let lhs = rec.boost[j - 1]
                .commutator(&rec.p[k])?
                .to_momentum_series()?
                .truncate_to(n - 1)?;
            let rhs = if j == k {
                let sing = s.sub(&s_inv)?.div_h(1)?;
                let reg = q_sp_sq.mul(&s_inv)?.mul_h(1).truncate_to(n - 1)?;
                sing.add(&reg)?.scalar_mul(&Scalar::rational_i(-1, 2))
            } else {
                TruncSeries::zero(&pvars(), n - 1)
            };
            report.push(
                "boost-momentum-shift-form",
                &format!("N{j},P{k}"),
                n - 1,
                lhs.sub(&rhs)?.ultra_norm(),
            );
        }
    }

    // C = (Pi0 + Pi0^{-1} - 2)/h^2 - Pvec^2 Pi0^{-1}, exact to n-2.
    {
        let two = TruncSeries::constant(s.vars(), n, Scalar::from_int(2));
        let sing = s.add(&s_inv)?.sub(&two)?.div_h(2)?;
        let reg = q_sp_sq.mul(&s_inv)?.truncate_to(n - 2)?;
        let rhs = sing.sub(&reg)?;
        let lhs = rec.casimir.to_momentum_series()?.truncate_to(n - 2)?;
        report.push("casimir-shift-form", "C", n - 2, lhs.sub(&rhs)?.ultra_norm());
    }

    Ok(report)
}
