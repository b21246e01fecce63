//! Reducedness test for convex odd-gons.
//!
//! A convex odd-gon with thickness below `pi/2` is reduced exactly when every
//! vertex projects into the relative interior of its opposite side and all
//! vertex-to-opposite-side distances are equal (that common value is then
//! the thickness).

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;
use sphere_core::circle::{great_circle_through, project_to_circle, GeodesicArc};
use sphere_core::{is_spherically_convex, sph_dist, SphericalPolygon, UnitVec3};

use crate::error::{ReducedError, Result};

/// Default reducedness tolerance, in radians.
pub const REDUCED_TOL: f64 = 1e-8;

/// 0-based indices `(j, k)` of the side opposite vertex `i`:
/// `j = i + (n-1)/2`, `k = i + (n+1)/2`, modulo `n`.
///
/// In 1-based labels, vertex `v_{i+1}` faces side `v_{j+1} v_{k+1}`.
pub fn opposite_side_indices(i: usize, n: usize) -> Result<(usize, usize)> {
    if n % 2 == 0 {
        return Err(ReducedError::EvenGon(n));
    }
    if n < 3 {
        return Err(ReducedError::Domain(format!("need at least 3 vertices, got {n}")));
    }
    let half = n / 2;
    Ok(((i + half) % n, (i + half + 1) % n))
}

/// Distance from `v` to the great circle through `a` and `b`.
pub fn distance_to_circle(v: UnitVec3, a: UnitVec3, b: UnitVec3) -> f64 {
    match great_circle_through(a, b) {
        Ok(circle) => circle.signed_distance(v).abs(),
        Err(_) => f64::NAN,
    }
}

/// Per-vertex row of the reducedness diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct VertexCheck {
    /// 0-based vertex index.
    pub index: usize,
    pub opposite: (usize, usize),
    /// `|v_i t_i|`, distance to the opposite side's great circle.
    pub distance: f64,
    /// `distance - mean distance`.
    pub deviation: f64,
    /// Distance from the projection to the nearer end of the opposite side;
    /// negative when the projection falls outside the side.
    pub interior_margin: f64,
    #[serde(skip)]
    pub projection: Option<UnitVec3>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReducednessReport {
    pub reduced: bool,
    pub tolerance: f64,
    /// First failing condition, if any.
    pub reason: Option<String>,
    pub mean_distance: Option<f64>,
    pub max_deviation: Option<f64>,
    pub vertices: Vec<VertexCheck>,
}

impl ReducednessReport {
    fn rejected(tolerance: f64, reason: String) -> Self {
        ReducednessReport {
            reduced: false,
            tolerance,
            reason: Some(reason),
            mean_distance: None,
            max_deviation: None,
            vertices: Vec::new(),
        }
    }
}

/// Projection of `v` on the side `ab` and its signed interior margin.
pub(crate) fn project_on_side(v: UnitVec3, a: UnitVec3, b: UnitVec3, tol: f64) -> (Option<UnitVec3>, f64) {
    let Ok(circle) = great_circle_through(a, b) else {
        return (None, f64::NEG_INFINITY);
    };
    let Ok(t) = project_to_circle(v, &circle) else {
        return (None, f64::NEG_INFINITY);
    };
    let side = GeodesicArc::new(a, b).expect("side endpoints are distinct");
    let margin = if side.contains(t, tol.min(1e-12)) {
        sph_dist(a, t).min(sph_dist(t, b))
    } else {
        -sph_dist(a, t).min(sph_dist(t, b))
    };
    (Some(t), margin)
}

/// Tests whether `p` is a reduced polygon, to within `tol` radians.
pub fn is_reduced(p: &SphericalPolygon, tol: f64) -> ReducednessReport {
    let n = p.len();
    if n % 2 == 0 {
        return ReducednessReport::rejected(tol, format!("{n}-gon: a reduced polygon has an odd number of vertices"));
    }
    if !is_spherically_convex(p) {
        return ReducednessReport::rejected(
            tol,
            format!(
                "not spherically convex (violation at index {})",
                p.convexity_violation().unwrap_or(0)
            ),
        );
    }
    let mut rows: Vec<VertexCheck> = (0..n)
        .map(|i| {
            let (j, k) = opposite_side_indices(i, n).expect("n is odd");
            let v = p.vertex(i);
            let (projection, interior_margin) = project_on_side(v, p.vertex(j), p.vertex(k), tol);
            let distance = projection.map_or(f64::NAN, |t| sph_dist(v, t));
            VertexCheck {
                index: i,
                opposite: (j, k),
                distance,
                deviation: 0.0,
                interior_margin,
                projection,
            }
        })
        .collect();
    let mean = rows.iter().map(|r| r.distance).sum::<f64>() / n as f64;
    let mut max_dev: f64 = 0.0;
    for r in &mut rows {
        r.deviation = r.distance - mean;
        max_dev = max_dev.max(r.deviation.abs());
    }

    let reason = if !mean.is_finite() {
        Some("a vertex projection is undefined".to_string())
    } else if let Some(r) = rows.iter().find(|r| r.interior_margin <= tol) {
        Some(format!(
            "projection of vertex {} is not interior to side ({}, {}) (margin {:e})",
            r.index, r.opposite.0, r.opposite.1, r.interior_margin
        ))
    } else if max_dev >= tol {
        Some(format!(
            "vertex distances to opposite sides differ by up to {max_dev:e}"
        ))
    } else if mean >= FRAC_PI_2 {
        Some(format!("thickness {mean} is not below pi/2"))
    } else {
        None
    };

    ReducednessReport {
        reduced: reason.is_none(),
        tolerance: tol,
        reason,
        mean_distance: Some(mean),
        max_deviation: Some(max_dev),
        vertices: rows,
    }
}
