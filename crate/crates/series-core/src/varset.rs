use crate::error::{Result, SeriesError};
use std::sync::Arc;

/// A named commuting symbol. `laurent` marks the symbol invertible, allowing
/// negative exponents (a group-like element such as the shift `Pi0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: String,
    pub laurent: bool,
}

/// An ordered alphabet of commuting symbols, not including the deformation
/// parameter `h` (which every series carries implicitly as exponent slot 0).
///
/// Variables are kept sorted by name so that exponent vectors, equality, and
/// the JSON wire format are canonical regardless of construction order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    vars: Vec<Var>,
}

impl VarSet {
    /// General constructor: any number of Laurent-marked symbols.
    ///
    /// Public series data uses [`VarSet::standard`] (at most one invertible
    /// symbol); this constructor exists for internal tensor-leg alphabets
    /// where each leg carries its own copy of the shift symbol.
    pub fn new<I, S>(vars: I) -> Result<Arc<VarSet>>
    where
        I: IntoIterator<Item = (S, bool)>,
        S: Into<String>,
    {
        let mut v: Vec<Var> = vars
            .into_iter()
            .map(|(name, laurent)| Var { name: name.into(), laurent })
            .collect();
        for var in &v {
            if var.name == "h" {
                return Err(SeriesError::Invalid(
                    "`h` is implicit and cannot be declared as a variable".into(),
                ));
            }
            if var.name.is_empty() {
                return Err(SeriesError::Invalid("empty variable name".into()));
            }
        }
        v.sort();
        for w in v.windows(2) {
            if w[0].name == w[1].name {
                return Err(SeriesError::Invalid(format!("duplicate variable `{}`", w[0].name)));
            }
        }
        Ok(Arc::new(VarSet { vars: v }))
    }

    /// The public-facing shape: plain momentum symbols plus at most one
    /// distinguished invertible symbol.
    pub fn standard(momenta: &[&str], laurent: Option<&str>) -> Result<Arc<VarSet>> {
        let mut all: Vec<(String, bool)> =
            momenta.iter().map(|m| (m.to_string(), false)).collect();
        if let Some(l) = laurent {
            all.push((l.to_string(), true));
        }
        VarSet::new(all)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Index of `name` in the alphabet (exponent slot is `index + 1`).
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.name.as_str().cmp(name)).ok()
    }

    pub fn is_laurent(&self, index: usize) -> bool {
        self.vars[index].laurent
    }

    pub fn name(&self, index: usize) -> &str {
        &self.vars[index].name
    }

    /// Union alphabet plus, for each input alphabet, the map from its
    /// variable indices to indices in the union.
    pub fn union(a: &Arc<VarSet>, b: &Arc<VarSet>) -> Result<(Arc<VarSet>, Vec<usize>, Vec<usize>)> {
        if a == b || a.vars == b.vars {
            let id_a: Vec<usize> = (0..a.len()).collect();
            let id_b: Vec<usize> = (0..b.len()).collect();
            let merged = if Arc::ptr_eq(a, b) { a.clone() } else { a.clone() };
            return Ok((merged, id_a, id_b));
        }
        let mut names: Vec<Var> = a.vars.clone();
        for v in &b.vars {
            match names.binary_search(v) {
                Ok(_) => {}
                Err(_) => {
                    // Same name with a different laurent flag is a conflict,
                    // not a new variable.
                    if names.iter().any(|w| w.name == v.name) {
                        return Err(SeriesError::Invalid(format!(
                            "variable `{}` declared both invertible and not",
                            v.name
                        )));
                    }
                    names.push(v.clone());
                }
            }
            names.sort();
        }
        let merged = Arc::new(VarSet { vars: names });
        let map = |src: &VarSet| -> Vec<usize> {
            src.vars
                .iter()
                .map(|v| merged.index_of(&v.name).expect("union contains all inputs"))
                .collect()
        };
        Ok((merged.clone(), map(a), map(b)))
    }
}
