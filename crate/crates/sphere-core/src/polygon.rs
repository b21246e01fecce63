//! Convex spherical polygons.

use std::f64::consts::PI;

use crate::error::{GeomError, Result};
use crate::tolerance::Tolerances;
use crate::vector::{add, signed_angle_at, sph_dist, UnitVec3};

/// A spherical polygon given by its vertices in counterclockwise order as
/// seen from outside the sphere.
///
/// Construction only enforces the structural invariants (at least three
/// vertices, none coincident or antipodal). Convexity is a separate
/// predicate so that non-convex input can still be loaded and diagnosed;
/// every measurement that needs it fails with [`GeomError::NonConvex`].
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    vertices: Vec<UnitVec3>,
}

impl SphericalPolygon {
    pub fn new(vertices: Vec<UnitVec3>) -> Result<Self> {
        Self::new_with(vertices, &Tolerances::default())
    }

    pub fn new_with(vertices: Vec<UnitVec3>, tol: &Tolerances) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices(n));
        }
        for i in 0..n {
            for j in i + 1..n {
                let d = sph_dist(vertices[i], vertices[j]);
                if d < tol.geo {
                    return Err(GeomError::DuplicateVertex(i, j));
                }
                if d > PI - tol.geo {
                    return Err(GeomError::AntipodalVertices(i, j));
                }
            }
        }
        Ok(SphericalPolygon { vertices })
    }

    /// Like [`SphericalPolygon::new`] but also rejects non-convex input.
    pub fn convex(vertices: Vec<UnitVec3>) -> Result<Self> {
        let p = Self::new(vertices)?;
        match p.first_convexity_violation(&Tolerances::default()) {
            Some(i) => Err(GeomError::NonConvex(i)),
            None => Ok(p),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertices(&self) -> &[UnitVec3] {
        &self.vertices
    }

    /// Vertex `i` with the index taken modulo `n`.
    #[inline]
    pub fn vertex(&self, i: usize) -> UnitVec3 {
        self.vertices[i % self.vertices.len()]
    }

    pub fn is_odd_gon(&self) -> bool {
        self.len() % 2 == 1
    }

    /// Normalized vertex centroid.
    pub fn centroid(&self) -> Result<UnitVec3> {
        let sum = self.vertices.iter().fold([0.0; 3], |acc, v| add(acc, v.to_array()));
        UnitVec3::normalize(sum)
    }

    /// Inward edge normals `n_i = normalize(v_i x v_{i+1})`.
    pub fn edge_normals(&self) -> Vec<UnitVec3> {
        let n = self.len();
        (0..n)
            .map(|i| {
                UnitVec3::normalize(self.vertices[i].cross(self.vertices[(i + 1) % n]))
                    .expect("adjacent vertices are distinct and not antipodal")
            })
            .collect()
    }

    /// Side lengths `|v_i v_{i+1}|`.
    pub fn side_lengths(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| sph_dist(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    pub fn perimeter(&self) -> f64 {
        self.side_lengths().iter().sum()
    }

    /// The same polygon with every vertex mapped by `f`.
    pub fn map_vertices(&self, f: impl Fn(UnitVec3) -> UnitVec3) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&v| f(v)).collect())
    }

    fn first_convexity_violation(&self, tol: &Tolerances) -> Option<usize> {
        let normals = self.edge_normals();
        for (i, ni) in normals.iter().enumerate() {
            if self.vertices.iter().any(|v| v.dot(*ni) < -tol.half_space) {
                return Some(i);
            }
        }
        // antipodal pairs are excluded at construction
        let u = self.centroid().ok()?;
        self.vertices.iter().position(|v| v.dot(u) <= 0.0)
    }

    /// Index of a vertex or edge that witnesses non-convexity, if any.
    pub fn convexity_violation(&self) -> Option<usize> {
        self.first_convexity_violation(&Tolerances::default())
    }
}

/// Convexity test: every vertex lies in every inward edge half-space, no two
/// vertices are antipodal, and all vertices lie strictly inside the
/// hemisphere centred at the normalized vertex centroid.
pub fn is_spherically_convex(p: &SphericalPolygon) -> bool {
    is_spherically_convex_with(p, &Tolerances::default())
}

pub fn is_spherically_convex_with(p: &SphericalPolygon, tol: &Tolerances) -> bool {
    if p.centroid().is_err() {
        return false;
    }
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            if sph_dist(p.vertices[i], p.vertices[j]) > PI - tol.geo {
                return false;
            }
        }
    }
    p.first_convexity_violation(tol).is_none()
}

/// Closed-set membership for a convex polygon.
pub fn contains_point_convex(p: &SphericalPolygon, q: UnitVec3) -> bool {
    contains_point_convex_with(p, q, &Tolerances::default())
}

pub fn contains_point_convex_with(p: &SphericalPolygon, q: UnitVec3, tol: &Tolerances) -> bool {
    p.edge_normals().iter().all(|n| q.dot(*n) >= -tol.half_space)
}

/// Membership test against precomputed edge normals, for hot loops.
#[inline]
pub fn inside_normals(normals: &[UnitVec3], q: UnitVec3, slack: f64) -> bool {
    normals.iter().all(|n| q.dot(*n) >= -slack)
}

/// Interior angles `gamma_i` in `(0, pi)`, measured in the tangent plane at each vertex.
pub fn interior_angles(p: &SphericalPolygon) -> Result<Vec<f64>> {
    let n = p.len();
    (0..n)
        .map(|i| {
            let prev = p.vertices[(i + n - 1) % n];
            let next = p.vertices[(i + 1) % n];
            // counterclockwise turn from the outgoing to the incoming edge
            let g = signed_angle_at(p.vertices[i], next, prev);
            if g <= 0.0 || g >= PI {
                Err(GeomError::NonConvex(i))
            } else {
                Ok(g)
            }
        })
        .collect()
}

/// Area as angular excess: `sum(gamma_i) - (n - 2) pi`.
pub fn girard_area(p: &SphericalPolygon) -> Result<f64> {
    if let Some(i) = p.convexity_violation() {
        return Err(GeomError::NonConvex(i));
    }
    let gammas = interior_angles(p)?;
    Ok(gammas.iter().sum::<f64>() - (p.len() as f64 - 2.0) * PI)
}
