//! Machine-readable rows for the axiom batteries.

use serde::Serialize;

/// Outcome of one structural identity, checked for one generator (or one
/// pair) at a stated truncation order. `pass` is exact-zero of the residual,
/// not a tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomRow {
    pub axiom: String,
    pub generators: String,
    pub order: u32,
    pub residual_ultra_norm: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub rows: Vec<AxiomRow>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, axiom: &str, generators: &str, order: u32, residual: f64) {
        self.rows.push(AxiomRow {
            axiom: axiom.to_string(),
            generators: generators.to_string(),
            order,
            residual_ultra_norm: residual,
            pass: residual == 0.0,
        });
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.rows.extend(other.rows);
    }

    /// True when every row passed.
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Largest residual across rows (`0.0` for an empty report).
    pub fn worst(&self) -> f64 {
        self.rows.iter().map(|r| r.residual_ultra_norm).fold(0.0, f64::max)
    }

    pub fn failed(&self) -> Vec<&AxiomRow> {
        self.rows.iter().filter(|r| !r.pass).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization cannot fail")
    }
}
