//! Decomposition export document (`spherigon-decomp/1`).
//!
//! Row indices are 1-based. Points are unit vectors `[x, y, z]`.

use serde::{Deserialize, Serialize};
use sphere_core::tolerance::LOAD_UNIT_TOL;
use sphere_core::UnitVec3;

use crate::decompose::{ReducedDecomposition, VertexData};
use crate::error::{ReducedError, Result};
use crate::scalar::ThicknessProfile;

pub const DECOMP_FORMAT: &str = "spherigon-decomp/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompRow {
    pub i: usize,
    pub t: [f64; 3],
    pub o: [f64; 3],
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
    pub b: f64,
    pub c: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub format: String,
    pub omega: f64,
    pub rows: Vec<DecompRow>,
}

fn bad(msg: impl Into<String>) -> ReducedError {
    ReducedError::Format(msg.into())
}

impl DecompositionDocument {
    pub fn from_decomposition(d: &ReducedDecomposition) -> Self {
        DecompositionDocument {
            format: DECOMP_FORMAT.to_string(),
            omega: d.omega(),
            rows: d
                .rows()
                .iter()
                .enumerate()
                .map(|(i, r)| DecompRow {
                    i: i + 1,
                    t: r.t.to_array(),
                    o: r.o.to_array(),
                    alpha: r.alpha,
                    beta: r.beta,
                    phi: r.phi,
                    b: r.b,
                    c: r.c,
                    y: r.y,
                })
                .collect(),
        }
    }

    /// Parses and validates a document.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: DecompositionDocument = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn parse_bytes(bytes: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(bytes).map_err(|e| bad(e.to_string()))?;
        Self::parse(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document is serializable")
    }

    pub fn validate(&self) -> Result<()> {
        if self.format != DECOMP_FORMAT {
            return Err(bad(format!("unsupported format {:?}", self.format)));
        }
        ThicknessProfile::new(self.omega).map_err(|e| bad(e.to_string()))?;
        let n = self.rows.len();
        if n < 3 || n % 2 == 0 {
            return Err(bad(format!("expected an odd number (>= 3) of rows, got {n}")));
        }
        for (k, row) in self.rows.iter().enumerate() {
            if row.i != k + 1 {
                return Err(bad(format!("row {} has index {}", k + 1, row.i)));
            }
            let scalars = [row.alpha, row.beta, row.phi, row.b, row.c, row.y];
            if scalars.iter().any(|v| !v.is_finite()) {
                return Err(bad(format!("row {} has a non-finite value", row.i)));
            }
            for p in [row.t, row.o] {
                UnitVec3::from_near_unit(p, LOAD_UNIT_TOL).map_err(|e| bad(format!("row {}: {e}", row.i)))?;
            }
        }
        Ok(())
    }

    /// Per-vertex rows as [`VertexData`], renormalizing the points.
    pub fn vertex_data(&self) -> Result<Vec<VertexData>> {
        self.rows
            .iter()
            .map(|r| {
                let unit = |p| UnitVec3::from_near_unit(p, LOAD_UNIT_TOL).map_err(|e| bad(e.to_string()));
                Ok(VertexData {
                    t: unit(r.t)?,
                    o: unit(r.o)?,
                    alpha: r.alpha,
                    beta: r.beta,
                    phi: r.phi,
                    b: r.b,
                    c: r.c,
                    y: r.y,
                })
            })
            .collect()
    }
}
