//! `{"ring": <label or inline algebra>, "terms": [{"offset", "left_tail",
//! "window_start", "window", "right_tail"}]}` with rational-string coordinates.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize};

use super::{JacobiOperator, TailSequence};
use crate::algebra::json::AlgebraJson;
use crate::algebra::{self, FinDimAlgebra};
use crate::error::Result;
use crate::linalg::rational::{format_vector, parse_vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum RingSpec {
    Label(String),
    Inline(AlgebraJson),
}

// Untagged derive buffers maps with string keys, which breaks the integer
// keys of an inline table; dispatch on the JSON value instead.
impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => Ok(RingSpec::Label(s)),
            v => serde_json::from_value(v).map(RingSpec::Inline).map_err(serde::de::Error::custom),
        }
    }
}

impl RingSpec {
    pub fn resolve(self) -> Result<FinDimAlgebra> {
        match self {
            RingSpec::Label(l) => algebra::from_label(&l),
            RingSpec::Inline(j) => j.try_into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub offset: i64,
    pub left_tail: Vec<String>,
    pub window_start: i64,
    pub window: Vec<Vec<String>>,
    pub right_tail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub ring: RingSpec,
    pub terms: Vec<TermJson>,
}

impl OperatorJson {
    /// Rings that round-trip through their label are written by label.
    pub fn from_operator(a: &JacobiOperator) -> Self {
        let ring = a.ring();
        let spec = match algebra::from_label(ring.label()) {
            Ok(r) if r == **ring => RingSpec::Label(ring.label().to_string()),
            _ => RingSpec::Inline(AlgebraJson::from(&**ring)),
        };
        let terms = a
            .terms()
            .iter()
            .map(|(m, s)| TermJson {
                offset: *m,
                left_tail: format_vector(s.left()),
                window_start: s.window_start(),
                window: s.window().iter().map(|v| format_vector(v)).collect(),
                right_tail: format_vector(s.right()),
            })
            .collect();
        Self { ring: spec, terms }
    }

    pub fn into_operator(self) -> Result<JacobiOperator> {
        let ring = Arc::new(self.ring.resolve()?);
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            let window = t.window.iter().map(|v| parse_vector(v)).collect::<Result<Vec<_>>>()?;
            let seq = TailSequence::new(parse_vector(&t.left_tail)?, t.window_start, window, parse_vector(&t.right_tail)?);
            terms.push((t.offset, seq));
        }
        JacobiOperator::new(ring, terms)
    }
}

pub fn operator_to_json(a: &JacobiOperator) -> String {
    serde_json::to_string(&OperatorJson::from_operator(a)).expect("operator JSON is serializable")
}

pub fn operator_from_json(s: &str) -> Result<JacobiOperator> {
    serde_json::from_str::<OperatorJson>(s)?.into_operator()
}
