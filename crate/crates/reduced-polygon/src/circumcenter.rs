//! Least-squares circumscribed circle of a spherical polygon.

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use sphere_core::{sph_dist, SphericalPolygon, UnitVec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circumcircle {
    pub center: UnitVec3,
    /// Mean of `|o v_i|`.
    pub radius: f64,
    /// `max |o v_i| - min |o v_i|`.
    pub spread: f64,
}

/// Centre of the small circle best fitting the vertices.
///
/// A small circle is the section of the sphere by a plane `o . p = cos r`;
/// the plane's normal minimizing `sum (o . (v_i - mean))^2` is the
/// eigenvector of the smallest eigenvalue of the vertex covariance. It is
/// oriented toward the vertex centroid.
pub fn circumscribed_center(p: &SphericalPolygon) -> Circumcircle {
    let pts: Vec<Vector3<f64>> = p.vertices().iter().map(|v| Vector3::from(v.to_array())).collect();
    let mean = pts.iter().sum::<Vector3<f64>>() / pts.len() as f64;
    let cov = pts
        .iter()
        .map(|v| (v - mean) * (v - mean).transpose())
        .sum::<Matrix3<f64>>();
    let eig = SymmetricEigen::new(cov);
    let (idx, _) = eig.eigenvalues.iter().enumerate().fold(
        (0, f64::INFINITY),
        |best, (i, &l)| if l < best.1 { (i, l) } else { best },
    );
    let mut axis: Vector3<f64> = eig.eigenvectors.column(idx).into();
    if axis.dot(&mean) < 0.0 {
        axis = -axis;
    }
    let center = UnitVec3::normalize([axis.x, axis.y, axis.z]).expect("eigenvectors are unit");
    let radii: Vec<f64> = p.vertices().iter().map(|v| sph_dist(center, *v)).collect();
    let max = radii.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = radii.iter().copied().fold(f64::INFINITY, f64::min);
    Circumcircle {
        center,
        radius: radii.iter().sum::<f64>() / radii.len() as f64,
        spread: max - min,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::regular_odd_gon;

    #[test]
    fn regular_heptagon_is_concyclic() {
        let c = circumscribed_center(&regular_odd_gon(7, 1.2).unwrap());
        assert!(c.spread < 1e-9);
        assert!(sph_dist(c.center, UnitVec3::Z) < 1e-9);
    }

    #[test]
    fn octant_center() {
        let p = SphericalPolygon::new(vec![UnitVec3::X, UnitVec3::Y, UnitVec3::Z]).unwrap();
        let c = circumscribed_center(&p);
        assert!(sph_dist(c.center, UnitVec3::new(1.0, 1.0, 1.0).unwrap()) < 1e-12);
        assert!((c.radius - (1.0f64 / 3f64.sqrt()).acos()).abs() < 1e-12);
    }
}
