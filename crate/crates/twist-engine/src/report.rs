//! Machine-readable verification rows for the twist layer.

use serde::Serialize;
use weyl_engine::{MetricSig, Side};

use crate::error::Result;
use crate::family::TwistFamily;
use crate::star::{coordinate_realization, coordinate_relation_residuals};
use crate::twist::Twist;

/// One verification line: which identity, for which family member, at what
/// order, with the residual's ultrametric size.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub family: String,
    pub param: String,
    pub order: u32,
    pub residual_norm: f64,
    pub pass: bool,
}

impl CheckRow {
    fn new(check: &str, tw: &Twist, order: u32, residual_norm: f64) -> Self {
        CheckRow {
            check: check.to_string(),
            family: tw.family().name().to_string(),
            param: tw.family().param_label(),
            order,
            residual_norm,
            pass: residual_norm == 0.0,
        }
    }
}

/// Run the full identity battery for one twist. The Yang-Baxter product is
/// the costliest item, so it runs at `min(order, qybe_order)`.
pub fn verify_twist(
    family: &TwistFamily,
    order: u32,
    qybe_order: u32,
    metric: &MetricSig,
) -> Result<Vec<CheckRow>> {
    let tw = Twist::build(family.clone(), order, metric)?;
    let mut rows = Vec::new();

    rows.push(CheckRow::new("unit", &tw, order, tw.unit_residual()?.ultra_norm()));

    let (nl, nr) = tw.normalization_residuals()?;
    rows.push(CheckRow::new("normalization-left", &tw, order, nl.ultra_norm()));
    rows.push(CheckRow::new("normalization-right", &tw, order, nr.ultra_norm()));

    rows.push(CheckRow::new("cocycle", &tw, order, tw.cocycle_residual()?.ultra_norm()));

    if let Some((ts, ss)) = coordinate_relation_residuals(&tw)? {
        rows.push(CheckRow::new("coordinate-time-space", &tw, order, ts));
        rows.push(CheckRow::new("coordinate-space-space", &tw, order, ss));
    }

    // The induced coordinate operators must match the closed realization
    // formulas, family by family.
    match family {
        TwistFamily::Abelian { s } => {
            for side in [Side::Left, Side::Right] {
                let got = coordinate_realization(&tw, side)?;
                let want = weyl_engine::realize_coordinates(
                    weyl_engine::CoordFamily::Abelian,
                    s,
                    side,
                    order,
                    metric,
                )?;
                let mut worst = 0f64;
                for mu in 0..4 {
                    worst = worst.max(got[mu].sub(&want[mu])?.ultra_norm());
                }
                let name = match side {
                    Side::Left => "coordinate-operators-left",
                    Side::Right => "coordinate-operators-right",
                };
                rows.push(CheckRow::new(name, &tw, order, worst));
            }
        }
        TwistFamily::Jordanian { r } => {
            for side in [Side::Left, Side::Right] {
                let got = coordinate_realization(&tw, side)?;
                let want = weyl_engine::realize_coordinates(
                    weyl_engine::CoordFamily::Jordanian,
                    r,
                    side,
                    order,
                    metric,
                )?;
                let mut worst = 0f64;
                for mu in 0..4 {
                    worst = worst.max(got[mu].sub(&want[mu])?.ultra_norm());
                }
                let name = match side {
                    Side::Left => "coordinate-operators-left",
                    Side::Right => "coordinate-operators-right",
                };
                rows.push(CheckRow::new(name, &tw, order, worst));
            }
        }
        TwistFamily::Theta { .. } | TwistFamily::Coboundary { .. } => {}
    }

    let qorder = order.min(qybe_order);
    let tw_q =
        if qorder == order { tw } else { Twist::build(family.clone(), qorder, metric)? };
    rows.push(CheckRow::new("yang-baxter", &tw_q, qorder, tw_q.qybe_residual()?.ultra_norm()));

    Ok(rows)
}
