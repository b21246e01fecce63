//! Butterflies: pairs of congruent right triangles sharing the crossing `o_i`.
//!
//! `B_i = (v_i, o_i, t_k) u (v_k, o_i, t_i)` with `k = i + (n+1)/2`. Each
//! triangle has a right angle at its foot and angles `phi_i` at `o_i` and
//! `alpha_i` at its vertex, so `area(B_i) = 2 (phi_i + alpha_i - pi/2)`.

use std::f64::consts::FRAC_PI_2;

use sphere_core::oracle::triangle_area;
use sphere_core::polygon::inside_normals;
use sphere_core::sample::{rng_from_seed, tangent_frame, uniform_in_cap};
use sphere_core::tolerance::GEO_TOL;
use sphere_core::vector::{dot, norm};
use sphere_core::{sph_dist, UnitVec3};

use crate::criterion::opposite_side_indices;
use crate::decompose::ReducedDecomposition;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Butterfly {
    pub index: usize,
    /// `(v_i, o_i, t_k)` and `(v_k, o_i, t_i)`.
    pub triangles: [[UnitVec3; 3]; 2],
    /// Sum of the two triangle excesses from side lengths.
    pub area: f64,
    /// `2 (phi_i + alpha_i - pi/2)`.
    pub area_from_angles: f64,
    /// Largest difference between corresponding side lengths of the two triangles.
    pub congruence_residual: f64,
}

fn sides(t: &[UnitVec3; 3]) -> [f64; 3] {
    [sph_dist(t[0], t[1]), sph_dist(t[1], t[2]), sph_dist(t[2], t[0])]
}

pub fn butterfly_decomposition(d: &ReducedDecomposition) -> Result<Vec<Butterfly>> {
    let p = d.polygon();
    let n = p.len();
    let rows = d.rows();
    (0..n)
        .map(|i| {
            let (_, k) = opposite_side_indices(i, n)?;
            let r = &rows[i];
            let triangles = [[p.vertex(i), r.o, rows[k].t], [p.vertex(k), r.o, r.t]];
            let (s0, s1) = (sides(&triangles[0]), sides(&triangles[1]));
            let congruence_residual = s0.iter().zip(&s1).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            Ok(Butterfly {
                index: i,
                area: triangles.iter().map(|t| triangle_area(t[0], t[1], t[2])).sum(),
                area_from_angles: 2.0 * (r.phi + r.alpha - FRAC_PI_2),
                congruence_residual,
                triangles,
            })
        })
        .collect()
}

/// Inward normals of a triangle, whatever its orientation; `None` if degenerate.
fn triangle_normals(t: &[UnitVec3; 3]) -> Option<[UnitVec3; 3]> {
    let orient = dot(t[0].cross(t[1]), t[2].to_array()).signum();
    let mut out = [UnitVec3::Z; 3];
    for e in 0..3 {
        let c = t[e].cross(t[(e + 1) % 3]);
        if norm(c) < 1e-15 {
            return None;
        }
        out[e] = UnitVec3::normalize([orient * c[0], orient * c[1], orient * c[2]]).ok()?;
    }
    Some(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverReport {
    pub samples: u64,
    pub uncovered: u64,
    /// Smallest, over sampled points, of the best containment margin among
    /// all butterfly triangles. Negative beyond `-tolerance` means a miss.
    pub worst_margin: f64,
    pub tolerance: f64,
}

/// Draws `samples` uniform points of the polygon and counts those outside
/// every butterfly triangle, at containment slack [`GEO_TOL`].
pub fn butterfly_cover(d: &ReducedDecomposition, samples: u64, seed: u64) -> Result<CoverReport> {
    if samples == 0 {
        return Err(domain("cover check needs at least one sample"));
    }
    let p = d.polygon();
    let normals: Vec<[UnitVec3; 3]> = butterfly_decomposition(d)?
        .iter()
        .flat_map(|b| b.triangles)
        .filter_map(|t| triangle_normals(&t))
        .collect();
    let edges = p.edge_normals();
    let center = p.centroid()?;
    let radius = p.vertices().iter().map(|v| sph_dist(center, *v)).fold(0.0, f64::max) * (1.0 + 1e-9);
    let frame = tangent_frame(center);
    let mut rng = rng_from_seed(seed);
    let mut report = CoverReport {
        samples,
        uncovered: 0,
        worst_margin: f64::INFINITY,
        tolerance: GEO_TOL,
    };
    let mut drawn = 0;
    while drawn < samples {
        let q = uniform_in_cap(&mut rng, center, frame, radius);
        if !inside_normals(&edges, q, 0.0) {
            continue;
        }
        drawn += 1;
        let best = normals
            .iter()
            .map(|tri| tri.iter().map(|m| q.dot(*m)).fold(f64::INFINITY, f64::min))
            .fold(f64::NEG_INFINITY, f64::max);
        report.worst_margin = report.worst_margin.min(best);
        if best < -GEO_TOL {
            report.uncovered += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::regular_odd_gon;
    use crate::decompose::decompose;
    use sphere_core::girard_area;

    #[test]
    fn regular_butterflies_tile_the_polygon() {
        let p = regular_odd_gon(7, 1.0).unwrap();
        let d = decompose(&p, 1.0).unwrap();
        let bs = butterfly_decomposition(&d).unwrap();
        assert_eq!(bs.len(), 7);
        for b in &bs {
            assert!((b.area - b.area_from_angles).abs() < 1e-9);
            assert!(b.congruence_residual < 1e-9);
            assert!((b.area - bs[0].area).abs() < 1e-12);
        }
        let total: f64 = bs.iter().map(|b| b.area).sum();
        assert!((total - girard_area(&p).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn cover_has_no_gaps() {
        let p = regular_odd_gon(5, 0.8).unwrap();
        let d = decompose(&p, 0.8).unwrap();
        let c = butterfly_cover(&d, 20_000, 3).unwrap();
        assert_eq!(c.uncovered, 0);
        assert!(c.worst_margin >= -GEO_TOL);
    }

    #[test]
    fn orientation_agnostic_triangle() {
        let t = [UnitVec3::X, UnitVec3::Y, UnitVec3::Z];
        let r = [UnitVec3::X, UnitVec3::Z, UnitVec3::Y];
        let q = UnitVec3::new(1.0, 1.0, 1.0).unwrap();
        for tri in [t, r] {
            let ns = triangle_normals(&tri).unwrap();
            assert!(ns.iter().all(|m| q.dot(*m) > 0.0));
            assert!(ns.iter().any(|m| (-q).dot(*m) < 0.0));
        }
    }
}
