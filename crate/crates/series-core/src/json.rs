//! Canonical JSON wire format for series.
//!
//! ```json
//! {
//!   "h_order": 8,
//!   "variables": [{"name": "P0"}, {"name": "Pi0", "laurent": true}],
//!   "terms": [{"exponents": [1, 2, 0], "re": "-3/4", "im": "0"}]
//! }
//! ```
//!
//! `exponents[0]` is the `h` exponent; `exponents[i+1]` matches
//! `variables[i]`. Coefficients are reduced rationals rendered as `p/q` (or
//! `p` for integers), so serialize → parse → serialize is byte-identical:
//! variables are stored sorted and terms in the canonical key order.

use crate::error::{Result, SeriesError};
use crate::scalar::Scalar;
use crate::series::TruncSeries;
use crate::varset::VarSet;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct VarDto {
    name: String,
    #[serde(default, skip_serializing_if = "is_false")]
    laurent: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    exponents: Vec<i32>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesDto {
    h_order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deg_cap: Option<u32>,
    variables: Vec<VarDto>,
    terms: Vec<TermDto>,
}

impl TruncSeries {
    fn to_dto(&self) -> SeriesDto {
        SeriesDto {
            h_order: self.h_order(),
            deg_cap: self.deg_cap(),
            variables: self
                .vars()
                .vars()
                .iter()
                .map(|v| VarDto { name: v.name.clone(), laurent: v.laurent })
                .collect(),
            terms: self
                .iter_terms()
                .map(|(k, c)| TermDto {
                    exponents: k.clone(),
                    re: Scalar::rational_string(c.re()),
                    im: Scalar::rational_string(c.im()),
                })
                .collect(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_dto()).expect("series DTO serializes")
    }

    /// Canonical wire form: fields in schema order, variables sorted, terms
    /// in key order. Byte-stable under round trips.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_dto()).expect("series DTO serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let dto: SeriesDto = serde_json::from_str(s)
            .map_err(|e| SeriesError::Parse(format!("invalid series JSON: {e}")))?;
        let vars = VarSet::new(dto.variables.iter().map(|v| (v.name.clone(), v.laurent)))?;
        // VarSet sorts; require the file to already be canonical so exponent
        // columns cannot silently permute.
        let file_names: Vec<&str> = dto.variables.iter().map(|v| v.name.as_str()).collect();
        let canon_names: Vec<&str> = vars.vars().iter().map(|v| v.name.as_str()).collect();
        if file_names != canon_names {
            return Err(SeriesError::Parse(format!(
                "variables must be sorted: found {file_names:?}"
            )));
        }
        let mut out = TruncSeries::zero(&vars, dto.h_order).with_deg_cap(dto.deg_cap);
        for t in &dto.terms {
            if t.exponents.len() != vars.len() + 1 {
                return Err(SeriesError::Parse(format!(
                    "expected {} exponents, found {}",
                    vars.len() + 1,
                    t.exponents.len()
                )));
            }
            if t.exponents[0] < 0 {
                return Err(SeriesError::Parse("negative h exponent".into()));
            }
            if t.exponents[0] as u32 > dto.h_order {
                return Err(SeriesError::Parse(format!(
                    "h exponent {} exceeds order {}",
                    t.exponents[0], dto.h_order
                )));
            }
            let c = Scalar::new(Scalar::parse_rational(&t.re)?, Scalar::parse_rational(&t.im)?);
            if c.is_zero() {
                return Err(SeriesError::Parse("explicit zero coefficient".into()));
            }
            let named: Vec<(&str, i32)> = t.exponents[1..]
                .iter()
                .enumerate()
                .map(|(i, e)| (vars.name(i), *e))
                .collect();
            let mono =
                TruncSeries::monomial(&vars, dto.h_order, t.exponents[0] as u32, &named, c)?
                    .with_deg_cap(dto.deg_cap);
            if mono.is_zero() {
                return Err(SeriesError::Parse(
                    "term exceeds the declared momentum-degree cap".into(),
                ));
            }
            let before = out.num_terms();
            out = out.add(&mono)?;
            if out.num_terms() != before + 1 {
                return Err(SeriesError::Parse("duplicate term key".into()));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn sample() -> TruncSeries {
        let vars: Arc<VarSet> = VarSet::standard(&["P0", "P1"], Some("Pi0")).unwrap();
        let one = TruncSeries::one(&vars, 4);
        let a = TruncSeries::monomial(
            &vars,
            4,
            1,
            &[("P0", 2), ("Pi0", -3)],
            Scalar::new(
                Scalar::parse_rational("-3/4").unwrap(),
                Scalar::parse_rational("1/2").unwrap(),
            ),
        )
        .unwrap();
        one.add(&a).unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let s = sample();
        let j1 = s.to_json_string();
        let back = TruncSeries::from_json_str(&j1).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json_string(), j1);
    }

    #[test]
    fn rejects_malformed() {
        let s = sample();
        let mut v = s.to_json_value();
        v["terms"][0]["exponents"] = serde_json::json!([0, 0]);
        assert!(TruncSeries::from_json_str(&v.to_string()).is_err());

        let mut v = s.to_json_value();
        v["terms"][0]["re"] = serde_json::json!("1/0");
        assert!(TruncSeries::from_json_str(&v.to_string()).is_err());
    }
}
