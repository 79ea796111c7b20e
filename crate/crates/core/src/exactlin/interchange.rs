use serde::{Deserialize, Serialize};

use super::{format_pq, parse_rational, MatQ};
use crate::error::{Error, Result};

/// JSON interchange record for the Tasaka matrices.
///
/// Rows and columns are indexed by tuples in canonical order; `entries` is
/// row-major `p/q` strings. `action` is always `"left"`: matrices act on row
/// vectors, so kernels in this format are left kernels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub kind: String,
    pub weight: u32,
    pub depth: usize,
    pub level: Option<usize>,
    pub action: String,
    pub row_index: Vec<Vec<u32>>,
    pub col_index: Vec<Vec<u32>>,
    pub entries: Vec<String>,
}

impl MatrixRecord {
    pub fn new(
        kind: impl Into<String>,
        weight: u32,
        depth: usize,
        level: Option<usize>,
        row_index: Vec<Vec<u32>>,
        col_index: Vec<Vec<u32>>,
        mat: &MatQ,
    ) -> Self {
        MatrixRecord {
            kind: kind.into(),
            weight,
            depth,
            level,
            action: "left".into(),
            row_index,
            col_index,
            entries: mat.entries().iter().map(format_pq).collect(),
        }
    }

    pub fn matrix(&self) -> Result<MatQ> {
        let entries = self
            .entries
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        MatQ::new(self.row_index.len(), self.col_index.len(), entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: MatrixRecord = serde_json::from_str(s)?;
        if rec.action != "left" {
            return Err(Error::Parse {
                what: "matrix action",
                input: rec.action,
            });
        }
        Ok(rec)
    }
}
