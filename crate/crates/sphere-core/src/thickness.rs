//! Thickness of a convex spherical polygon by sampling its supporting hemispheres.
//!
//! A hemisphere with centre `m` contains the polygon iff `m . v_j >= 0` for
//! every vertex, so the centres of supporting hemispheres trace the boundary
//! of the dual polygon: the inward edge normals `n_i` joined by arcs of the
//! circles `v_{i+1} . m = 0`. The lune `K n K*` has thickness `pi - |k k*|`,
//! hence
//!
//! ```text
//! width_K = pi - max_{k* on dual boundary} |k k*|
//! thickness = min_K width_K
//! ```
//!
//! Both the inner max and the outer min are found by dense sampling of the
//! boundary followed by golden-section refinement of the best bracket. The
//! reported error is the sum of the two final bracket lengths; both
//! objectives are 1-Lipschitz in arc length, so this bounds the refinement
//! error whenever the sampled bracket holds the optimum.

use std::f64::consts::PI;

use crate::error::{GeomError, Result};
use crate::polygon::SphericalPolygon;
use crate::vector::{sph_dist, UnitVec3};

pub const MIN_RESOLUTION: usize = 64;
pub const DEFAULT_RESOLUTION: usize = 1024;

const GOLDEN: f64 = 0.618_033_988_749_894_8;
const BRACKET_STOP: f64 = 1e-13;
const MAX_GOLDEN_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThicknessEstimate {
    /// Minimum lune thickness, in radians.
    pub value: f64,
    /// Refinement error bound, in radians.
    pub error: f64,
    /// Centre of the supporting hemisphere attaining the minimum.
    pub support: UnitVec3,
    /// Centre of the opposite supporting hemisphere.
    pub opposite: UnitVec3,
}

#[derive(Debug, Clone, Copy)]
struct DualArc {
    start: UnitVec3,
    end: UnitVec3,
    offset: f64,
    length: f64,
}

/// Closed boundary curve of the dual polygon, parametrized by arc length.
#[derive(Debug, Clone)]
pub struct DualBoundary {
    arcs: Vec<DualArc>,
    total: f64,
}

impl DualBoundary {
    pub fn new(p: &SphericalPolygon) -> Result<Self> {
        if let Some(i) = p.convexity_violation() {
            return Err(GeomError::NonConvex(i));
        }
        let normals = p.edge_normals();
        let n = normals.len();
        let mut offset = 0.0;
        let arcs = (0..n)
            .map(|i| {
                let start = normals[i];
                let end = normals[(i + 1) % n];
                let length = sph_dist(start, end);
                let arc = DualArc {
                    start,
                    end,
                    offset,
                    length,
                };
                offset += length;
                arc
            })
            .collect();
        Ok(DualBoundary { arcs, total: offset })
    }

    pub fn length(&self) -> f64 {
        self.total
    }

    /// Dual vertices, i.e. the inward edge normals.
    pub fn corners(&self) -> impl Iterator<Item = UnitVec3> + '_ {
        self.arcs.iter().map(|a| a.start)
    }

    /// Point at arc-length parameter `s`, taken modulo the boundary length.
    pub fn point(&self, s: f64) -> UnitVec3 {
        let s = s.rem_euclid(self.total);
        let idx = self.arcs.partition_point(|a| a.offset <= s).saturating_sub(1);
        let arc = &self.arcs[idx];
        if arc.length == 0.0 {
            return arc.start;
        }
        arc.start
            .slerp(arc.end, ((s - arc.offset) / arc.length).clamp(0.0, 1.0))
    }

    /// Sample parameters: every corner plus roughly `resolution` evenly spread points.
    pub fn sample_parameters(&self, resolution: usize) -> Vec<f64> {
        let mut params = Vec::with_capacity(resolution + self.arcs.len());
        for arc in &self.arcs {
            let m = ((resolution as f64 * arc.length / self.total).round() as usize).max(1);
            params.extend((0..m).map(|t| arc.offset + arc.length * t as f64 / m as f64));
        }
        params
    }
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
/// Returns `(argmax, max, final bracket length)`.
fn golden_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64, f64) {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_GOLDEN_STEPS {
        if hi - lo < BRACKET_STOP {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1, hi - lo)
    } else {
        (x2, f2, hi - lo)
    }
}

struct Sampled<'a> {
    boundary: &'a DualBoundary,
    params: Vec<f64>,
    points: Vec<UnitVec3>,
}

impl Sampled<'_> {
    /// Parameter bracket `[s_{j-1}, s_{j+1}]` around sample `j`, unwrapped.
    fn bracket(&self, j: usize) -> (f64, f64) {
        let m = self.params.len();
        let total = self.boundary.total;
        let prev = if j == 0 {
            self.params[m - 1] - total
        } else {
            self.params[j - 1]
        };
        let next = if j + 1 == m {
            self.params[0] + total
        } else {
            self.params[j + 1]
        };
        (prev, next)
    }

    /// Index of the sample farthest from `k` (smallest dot product).
    fn farthest_sample(&self, k: UnitVec3) -> usize {
        self.points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, p.dot(k)))
            .fold((0, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best })
            .0
    }

    /// Farthest boundary point from `k`: `(parameter, distance, bracket error)`.
    fn farthest(&self, k: UnitVec3) -> (f64, f64, f64) {
        let j = self.farthest_sample(k);
        let (lo, hi) = self.bracket(j);
        let (s, d, err) = golden_max(lo, hi, |s| sph_dist(k, self.boundary.point(s)));
        let sampled = sph_dist(k, self.points[j]);
        if sampled >= d {
            (self.params[j], sampled, err)
        } else {
            (s, d, err)
        }
    }
}

/// Thickness of a convex polygon, sampling the dual boundary at `resolution` points.
pub fn thickness(p: &SphericalPolygon, resolution: usize) -> Result<ThicknessEstimate> {
    if resolution < MIN_RESOLUTION {
        return Err(GeomError::InvalidResolution {
            got: resolution,
            min: MIN_RESOLUTION,
        });
    }
    let boundary = DualBoundary::new(p)?;
    let params = boundary.sample_parameters(resolution);
    let points = params.iter().map(|&s| boundary.point(s)).collect();
    let sampled = Sampled {
        boundary: &boundary,
        params,
        points,
    };

    let widths: Vec<f64> = sampled
        .points
        .iter()
        .map(|&k| PI - sph_dist(k, sampled.points[sampled.farthest_sample(k)]))
        .collect();
    let (j, _) = widths.iter().enumerate().fold(
        (0, f64::INFINITY),
        |best, (j, &w)| if w < best.1 { (j, w) } else { best },
    );

    let (lo, hi) = sampled.bracket(j);
    let (s, neg_width, outer_err) = golden_max(lo, hi, |s| -(PI - sampled.farthest(boundary.point(s)).1));
    let at_sample = PI - sampled.farthest(sampled.points[j]).1;
    let (s, width) = if at_sample <= -neg_width {
        (sampled.params[j], at_sample)
    } else {
        (s, -neg_width)
    };
    let support = boundary.point(s);
    let (s_opp, _, inner_err) = sampled.farthest(support);
    Ok(ThicknessEstimate {
        value: width,
        error: outer_err + inner_err,
        support,
        opposite: boundary.point(s_opp),
    })
}
