//! On-disk instance format.
//!
//! A single UTF-8 JSON document with fixed field order, so identical
//! instances serialize to identical bytes:
//!
//! ```json
//! {
//!   "kind": "coverage",          // or "facility"
//!   "n": 3,
//!   "m": 6,
//!   "costs": [0.3, 0.9, 0.5],
//!   "subsets": [[0, 2], [1], [0, 4, 5]],   // coverage only
//!   "seed": 42,
//!   "generator_params": { "gamma": 4, "p": 0.3, "p_prime": 0.7 }
//! }
//! ```
//!
//! Facility instances carry `"matrix"` (n rows of m rates) instead of
//! `"subsets"`, and may record the station coordinates in
//! `generator_params.stations`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{CostVector, Instance};
use crate::perm::Permutation;
use crate::utility::{CoverageUtility, FacilityLocationUtility};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Coverage,
    Facility,
}

impl std::fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InstanceKind::Coverage => "coverage",
            InstanceKind::Facility => "facility",
        })
    }
}

/// Parameters the generator was invoked with; absent fields are omitted from
/// the serialized document.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GeneratorParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p_prime: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stations: Option<Vec<(f64, f64)>>,
}

/// Serialized instance. Field declaration order is the wire order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: InstanceKind,
    pub n: usize,
    pub m: usize,
    pub costs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subsets: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<Vec<Vec<f64>>>,
    pub seed: u64,
    #[serde(default)]
    pub generator_params: GeneratorParams,
}

impl InstanceFile {
    pub fn from_coverage(
        utility: &CoverageUtility,
        costs: &CostVector,
        seed: u64,
        generator_params: GeneratorParams,
    ) -> Self {
        InstanceFile {
            kind: InstanceKind::Coverage,
            n: costs.len(),
            m: utility.m(),
            costs: costs.as_slice().to_vec(),
            subsets: Some(utility.subsets().to_vec()),
            matrix: None,
            seed,
            generator_params,
        }
    }

    pub fn from_facility(
        utility: &FacilityLocationUtility,
        costs: &CostVector,
        seed: u64,
        generator_params: GeneratorParams,
    ) -> Self {
        InstanceFile {
            kind: InstanceKind::Facility,
            n: costs.len(),
            m: utility.m(),
            costs: costs.as_slice().to_vec(),
            subsets: None,
            matrix: Some(utility.matrix().to_vec()),
            seed,
            generator_params,
        }
    }

    /// Structural consistency: declared n and m must match the payload, and
    /// the payload variant must match the kind.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::InvalidConfig { reason });
        if self.costs.len() != self.n {
            return fail(format!(
                "costs has {} entries but n = {}",
                self.costs.len(),
                self.n
            ));
        }
        match self.kind {
            InstanceKind::Coverage => {
                if self.matrix.is_some() {
                    return fail("coverage instance must not carry a matrix".to_string());
                }
                let Some(subsets) = &self.subsets else {
                    return fail("coverage instance requires subsets".to_string());
                };
                if subsets.len() != self.n {
                    return fail(format!("{} subsets but n = {}", subsets.len(), self.n));
                }
            }
            InstanceKind::Facility => {
                if self.subsets.is_some() {
                    return fail("facility instance must not carry subsets".to_string());
                }
                let Some(matrix) = &self.matrix else {
                    return fail("facility instance requires a matrix".to_string());
                };
                if matrix.len() != self.n {
                    return fail(format!("{} matrix rows but n = {}", matrix.len(), self.n));
                }
                if let Some(row) = matrix.iter().find(|r| r.len() != self.m) {
                    return fail(format!("matrix row has {} columns but m = {}", row.len(), self.m));
                }
            }
        }
        Ok(())
    }

    /// Materialize the instance (costs validated, oracle constructed).
    pub fn to_instance(&self) -> Result<Instance> {
        self.validate()?;
        let costs = CostVector::new(self.costs.clone())?;
        match self.kind {
            InstanceKind::Coverage => {
                let cu = CoverageUtility::new(
                    self.m,
                    self.subsets.clone().expect("validated above"),
                )?;
                Instance::new(costs, cu)
            }
            InstanceKind::Facility => {
                let fu = FacilityLocationUtility::new(self.matrix.clone().expect("validated above"))?;
                Instance::new(costs, fu)
            }
        }
    }

    /// Pretty JSON with a trailing newline; byte-identical for equal values.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files always serialize");
        s.push('\n');
        s
    }
}

pub fn write_instance(path: &Path, file: &InstanceFile) -> Result<()> {
    std::fs::write(path, file.to_json()).map_err(|e| Error::io(path, e))
}

pub fn read_instance(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: InstanceFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: Some(e.line()),
        reason: e.to_string(),
    })?;
    file.validate()?;
    Ok(file)
}

/// Read a permutation file: 0-based element indices separated by whitespace
/// and/or commas, `#` starts a comment. The indices must form a bijection on
/// `0..n`.
pub fn read_permutation(path: &Path) -> Result<Permutation> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut order = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for token in line.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let e: usize = token.parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: Some(idx + 1),
                reason: format!("expected a 0-based element index, got {token:?}"),
            })?;
            order.push(e);
        }
    }
    Permutation::new(order)
}
