use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::complex::Homology;
use crate::linalg::SparseVector;

pub const DEFAULT_CAP: usize = 3;
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Degree cap and size budget shared by every homology computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub cap: usize,
    /// Largest chain space (number of basis elements) that may be built.
    pub budget: usize,
    /// Whether cycle representatives are extracted along with dimensions.
    pub representatives: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP, budget: DEFAULT_BUDGET, representatives: true }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap, ..Self::default() }
    }

    pub fn dims_only(self) -> Self {
        Self { representatives: false, ..self }
    }

    /// Errors if the chain space in `degree` would hold more than `budget` basis elements.
    pub fn check(&self, degree: usize, size: u128) -> Result<()> {
        if size > self.budget as u128 {
            Err(Error::Budget { degree, size, budget: self.budget })
        } else {
            Ok(())
        }
    }
}

/// `base^exp` without overflow surprises.
pub(crate) fn power(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// Per-degree homology dimensions, optional primitive dimensions, and cycle
/// representatives (kept in memory only).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub label: String,
    pub dims: BTreeMap<usize, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prim_dims: Option<BTreeMap<usize, usize>>,
    #[serde(skip)]
    pub representatives: BTreeMap<usize, Vec<SparseVector>>,
}

impl HomologyReport {
    pub fn from_homology(label: impl Into<String>, h: Homology) -> Self {
        Self { label: label.into(), dims: h.dims, prim_dims: None, representatives: h.representatives }
    }

    /// Dimensions in degree order.
    pub fn dims_vec(&self) -> Vec<usize> {
        self.dims.values().copied().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report is serializable")
    }

    /// One `degree,dim` row per degree (plus `prim` rows when present).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,kind,degree,dim\n");
        for (n, d) in &self.dims {
            out.push_str(&format!("{},H,{n},{d}\n", csv_field(&self.label)));
        }
        if let Some(p) = &self.prim_dims {
            for (n, d) in p {
                out.push_str(&format!("{},prim,{n},{d}\n", csv_field(&self.label)));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.label);
        for (n, d) in &self.dims {
            out.push_str(&format!("  H_{n} = {d}\n"));
        }
        if let Some(p) = &self.prim_dims {
            for (n, d) in p {
                out.push_str(&format!("  Prim_{n} = {d}\n"));
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
