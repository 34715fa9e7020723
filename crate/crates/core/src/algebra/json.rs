//! JSON form of an algebra:
//! `{"dim": d, "unit": ["p/q", ...], "table": [[{"k": "p/q"}, ...], ...], "label": "..."}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FinDimAlgebra;
use crate::error::Result;
use crate::linalg::rational::{format_rational, format_vector, parse_rational, parse_vector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub unit: Vec<String>,
    pub table: Vec<Vec<BTreeMap<usize, String>>>,
    #[serde(default)]
    pub label: String,
}

impl From<&FinDimAlgebra> for AlgebraJson {
    fn from(a: &FinDimAlgebra) -> Self {
        let table = a
            .table()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|cell| cell.into_iter().map(|(k, v)| (k, format_rational(&v))).collect())
                    .collect()
            })
            .collect();
        Self { dim: a.dim(), unit: format_vector(a.unit()), table, label: a.label().to_string() }
    }
}

impl TryFrom<AlgebraJson> for FinDimAlgebra {
    type Error = crate::Error;

    fn try_from(j: AlgebraJson) -> Result<Self> {
        let mut table = Vec::with_capacity(j.table.len());
        for row in j.table {
            let mut out_row = Vec::with_capacity(row.len());
            for cell in row {
                let mut out_cell = BTreeMap::new();
                for (k, v) in cell {
                    out_cell.insert(k, parse_rational(&v)?);
                }
                out_row.push(out_cell);
            }
            table.push(out_row);
        }
        let label = if j.label.is_empty() { "A".to_string() } else { j.label };
        FinDimAlgebra::new(label, j.dim, table, parse_vector(&j.unit)?)
    }
}

pub fn to_json(a: &FinDimAlgebra) -> String {
    serde_json::to_string(&AlgebraJson::from(a)).expect("algebra JSON is serializable")
}

pub fn from_json(s: &str) -> Result<FinDimAlgebra> {
    let j: AlgebraJson = serde_json::from_str(s)?;
    j.try_into()
}

pub fn load(path: &Path) -> Result<FinDimAlgebra> {
    from_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, group_algebra_cyclic, matrix_algebra};

    #[test]
    fn round_trip() {
        for a in [dual_numbers(), group_algebra_cyclic(3).unwrap(), matrix_algebra(&dual_numbers(), 2).unwrap()] {
            let s = to_json(&a);
            assert_eq!(from_json(&s).unwrap(), a);
        }
    }

    #[test]
    fn explicit_document() {
        let s = r#"{"dim":2,"unit":["1","0"],"table":[[{"0":"1"},{"1":"1"}],[{"1":"1"},{}]],"label":"k[e]/(e^2)"}"#;
        assert_eq!(from_json(s).unwrap(), dual_numbers());
        assert_eq!(to_json(&dual_numbers()), s);
    }

    #[test]
    fn malformed_inputs() {
        assert!(from_json("{").is_err());
        let bad_rat = r#"{"dim":1,"unit":["x"],"table":[[{"0":"1"}]]}"#;
        assert!(matches!(from_json(bad_rat), Err(crate::Error::Parse(_))));
        let not_assoc = r#"{"dim":1,"unit":["1"],"table":[[{"0":"2"}]]}"#;
        assert!(from_json(not_assoc).is_err());
    }
}
