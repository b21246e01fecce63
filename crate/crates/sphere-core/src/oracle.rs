//! Independent area oracles.
//!
//! Neither routine shares code with [`girard_area`](crate::polygon::girard_area):
//! the triangulated oracle works from side lengths only, the Monte Carlo
//! oracle from point membership only.

use std::f64::consts::PI;

use crate::error::{GeomError, Result};
use crate::polygon::{inside_normals, SphericalPolygon};
use crate::sample::{rng_from_seed, uniform_on_sphere};
use crate::tolerance::HALF_SPACE_TOL;
use crate::vector::{sph_dist, UnitVec3};

/// Spherical excess of a triangle with sides `a`, `b`, `c` (L'Huilier).
pub fn triangle_excess_from_sides(a: f64, b: f64, c: f64) -> f64 {
    let s = 0.5 * (a + b + c);
    let t = (0.5 * s).tan() * (0.5 * (s - a)).tan() * (0.5 * (s - b)).tan() * (0.5 * (s - c)).tan();
    4.0 * t.max(0.0).sqrt().atan()
}

/// Area of the geodesic triangle `abc`.
pub fn triangle_area(a: UnitVec3, b: UnitVec3, c: UnitVec3) -> f64 {
    triangle_excess_from_sides(sph_dist(b, c), sph_dist(c, a), sph_dist(a, b))
}

/// Fan-triangulates from the first vertex and sums the L'Huilier excesses.
pub fn area_oracle_triangulated(p: &SphericalPolygon) -> Result<f64> {
    if let Some(i) = p.convexity_violation() {
        return Err(GeomError::NonConvex(i));
    }
    let v = p.vertices();
    Ok((1..v.len() - 1).map(|i| triangle_area(v[0], v[i], v[i + 1])).sum())
}

/// Monte Carlo area estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloArea {
    pub area: f64,
    pub std_error: f64,
    pub hits: u64,
    pub samples: u64,
}

impl MonteCarloArea {
    /// `|area - reference|` in units of the standard error.
    pub fn z_score(&self, reference: f64) -> f64 {
        (self.area - reference).abs() / self.std_error
    }
}

/// Uniform-sphere hit counting: `4 pi * hits / samples`.
pub fn area_oracle_montecarlo(p: &SphericalPolygon, samples: u64, seed: u64) -> Result<MonteCarloArea> {
    if samples == 0 {
        return Err(GeomError::InvalidSampleCount);
    }
    let normals = p.edge_normals();
    let mut rng = rng_from_seed(seed);
    let hits = (0..samples)
        .filter(|_| inside_normals(&normals, uniform_on_sphere(&mut rng), HALF_SPACE_TOL))
        .count() as u64;
    let frac = hits as f64 / samples as f64;
    Ok(MonteCarloArea {
        area: 4.0 * PI * frac,
        std_error: 4.0 * PI * (frac * (1.0 - frac) / samples as f64).sqrt(),
        hits,
        samples,
    })
}
