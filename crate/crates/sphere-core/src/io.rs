//! The polygon JSON document.
//!
//! ```json
//! {"format":"spherigon-polygon/1","vertices":[[x,y,z],...],"thickness_hint":0.8}
//! ```
//!
//! Vertices must be unit within [`LOAD_UNIT_TOL`]; they are renormalized on
//! load, with a warning when the deviation exceeds [`UNIT_NORM_TOL`].

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::polygon::SphericalPolygon;
use crate::tolerance::{LOAD_UNIT_TOL, UNIT_NORM_TOL};
use crate::vector::{norm, UnitVec3};

pub const POLYGON_FORMAT: &str = "spherigon-polygon/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonDocument {
    pub format: String,
    pub vertices: Vec<[f64; 3]>,
    #[serde(default)]
    pub thickness_hint: Option<f64>,
}

/// A loaded polygon together with the non-fatal issues found while loading.
#[derive(Debug, Clone)]
pub struct LoadedPolygon {
    pub polygon: SphericalPolygon,
    pub thickness_hint: Option<f64>,
    pub warnings: Vec<String>,
}

impl PolygonDocument {
    pub fn from_polygon(p: &SphericalPolygon, thickness_hint: Option<f64>) -> Self {
        PolygonDocument {
            format: POLYGON_FORMAT.to_string(),
            vertices: p.vertices().iter().map(|v| v.to_array()).collect(),
            thickness_hint,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GeomError::Format(e.to_string()))
    }

    pub fn parse_bytes(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| GeomError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document is always serializable")
    }

    /// Validates the document and builds the polygon.
    pub fn into_polygon(self) -> Result<LoadedPolygon> {
        if self.format != POLYGON_FORMAT {
            return Err(GeomError::Format(format!(
                "unsupported format {:?}, expected {POLYGON_FORMAT:?}",
                self.format
            )));
        }
        if let Some(h) = self.thickness_hint {
            if !(h.is_finite() && h > 0.0 && h < std::f64::consts::FRAC_PI_2) {
                return Err(GeomError::Format(format!("thickness_hint {h} outside (0, pi/2)")));
            }
        }
        let mut warnings = Vec::new();
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let n = norm(*v);
            let u = UnitVec3::from_near_unit(*v, LOAD_UNIT_TOL)
                .map_err(|e| GeomError::Format(format!("vertex {i}: {e}")))?;
            if (n - 1.0).abs() > UNIT_NORM_TOL {
                let msg = format!("vertex {i} renormalized (norm {n})");
                log::warn!("{msg}");
                warnings.push(msg);
            }
            vertices.push(u);
        }
        let polygon = SphericalPolygon::new(vertices).map_err(|e| GeomError::Format(e.to_string()))?;
        Ok(LoadedPolygon {
            polygon,
            thickness_hint: self.thickness_hint,
            warnings,
        })
    }
}

/// Parses and validates a polygon document in one step.
pub fn load_polygon(text: &str) -> Result<LoadedPolygon> {
    PolygonDocument::parse(text)?.into_polygon()
}

pub fn polygon_to_json(p: &SphericalPolygon, thickness_hint: Option<f64>) -> String {
    PolygonDocument::from_polygon(p, thickness_hint).to_json()
}
