//! Great circles, arcs, hemispheres and lunes.

use std::f64::consts::PI;

use crate::error::{GeomError, Result};
use crate::tolerance::Tolerances;
use crate::vector::{norm, scale, sph_dist, sub, UnitVec3};

/// A great circle `{p : p . normal = 0}`.
///
/// `normal` and `-normal` describe the same circle; the sign selects which
/// side counts as "positive" for hemisphere tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCircle {
    pub normal: UnitVec3,
}

impl GreatCircle {
    pub fn from_normal(normal: UnitVec3) -> Self {
        GreatCircle { normal }
    }

    /// Signed angular distance of `p` from the circle, positive on the normal side.
    pub fn signed_distance(&self, p: UnitVec3) -> f64 {
        let s = p.dot(self.normal);
        s.atan2(norm(p.cross(self.normal)))
    }

    pub fn contains(&self, p: UnitVec3, tol: f64) -> bool {
        self.signed_distance(p).abs() <= tol
    }
}

/// The unique great circle through two points that are neither equal nor antipodal.
pub fn great_circle_through(a: UnitVec3, b: UnitVec3) -> Result<GreatCircle> {
    great_circle_through_with(a, b, &Tolerances::default())
}

pub fn great_circle_through_with(a: UnitVec3, b: UnitVec3, tol: &Tolerances) -> Result<GreatCircle> {
    let c = a.cross(b);
    if norm(c) < tol.degenerate {
        return Err(GeomError::DegenerateArc);
    }
    Ok(GreatCircle {
        normal: UnitVec3::normalize(c)?,
    })
}

/// Closest point of `l` to `p`.
pub fn project_to_circle(p: UnitVec3, l: &GreatCircle) -> Result<UnitVec3> {
    project_to_circle_with(p, l, &Tolerances::default())
}

pub fn project_to_circle_with(p: UnitVec3, l: &GreatCircle, tol: &Tolerances) -> Result<UnitVec3> {
    let s = p.dot(l.normal);
    if s.abs() > 1.0 - tol.degenerate {
        return Err(GeomError::PoleProjection);
    }
    UnitVec3::normalize(sub(p.to_array(), scale(l.normal.to_array(), s))).map_err(|_| GeomError::PoleProjection)
}

/// The shorter great-circle segment between two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicArc {
    a: UnitVec3,
    b: UnitVec3,
}

impl GeodesicArc {
    pub fn new(a: UnitVec3, b: UnitVec3) -> Result<Self> {
        if norm(a.cross(b)) < Tolerances::default().degenerate {
            return Err(GeomError::DegenerateArc);
        }
        Ok(GeodesicArc { a, b })
    }

    pub fn start(&self) -> UnitVec3 {
        self.a
    }

    pub fn end(&self) -> UnitVec3 {
        self.b
    }

    pub fn length(&self) -> f64 {
        sph_dist(self.a, self.b)
    }

    pub fn circle(&self) -> GreatCircle {
        GreatCircle {
            normal: UnitVec3::normalize(self.a.cross(self.b)).expect("checked at construction"),
        }
    }

    pub fn midpoint(&self) -> UnitVec3 {
        self.a.slerp(self.b, 0.5)
    }

    /// Whether `p` lies on the arc, judged by `|ap| + |pb| - |ab| <= tol`.
    pub fn contains(&self, p: UnitVec3, tol: f64) -> bool {
        sph_dist(self.a, p) + sph_dist(p, self.b) - self.length() <= tol
    }
}

/// Crossing point of two arcs on distinct great circles, if they meet.
pub fn arcs_intersection(u: &GeodesicArc, v: &GeodesicArc) -> Result<Option<UnitVec3>> {
    arcs_intersection_with(u, v, &Tolerances::default())
}

pub fn arcs_intersection_with(u: &GeodesicArc, v: &GeodesicArc, tol: &Tolerances) -> Result<Option<UnitVec3>> {
    let line = u.circle().normal.cross(v.circle().normal);
    if norm(line) < tol.degenerate {
        return Err(GeomError::CoplanarArcs);
    }
    let p = UnitVec3::normalize(line)?;
    Ok([p, -p]
        .into_iter()
        .find(|&c| u.contains(c, tol.geo) && v.contains(c, tol.geo)))
}

/// Closed hemisphere `{p : p . center >= 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hemisphere {
    pub center: UnitVec3,
}

impl Hemisphere {
    pub fn new(center: UnitVec3) -> Self {
        Hemisphere { center }
    }

    pub fn contains(&self, p: UnitVec3, tol: f64) -> bool {
        p.dot(self.center) >= -tol
    }

    pub fn boundary(&self) -> GreatCircle {
        GreatCircle { normal: self.center }
    }
}

/// Intersection of two hemispheres whose centers are neither equal nor antipodal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lune {
    g: UnitVec3,
    h: UnitVec3,
}

impl Lune {
    pub fn new(g: UnitVec3, h: UnitVec3) -> Result<Self> {
        if norm(g.cross(h)) < Tolerances::default().degenerate {
            return Err(GeomError::DegenerateLune);
        }
        Ok(Lune { g, h })
    }

    pub fn centers(&self) -> (UnitVec3, UnitVec3) {
        (self.g, self.h)
    }

    pub fn contains(&self, p: UnitVec3, tol: f64) -> bool {
        Hemisphere::new(self.g).contains(p, tol) && Hemisphere::new(self.h).contains(p, tol)
    }

    /// Midpoints of the two boundary semicircles `G/H` and `H/G`.
    pub fn boundary_midpoints(&self) -> (UnitVec3, UnitVec3) {
        // the boundaries meet at +-corner; each boundary arc inside the other
        // hemisphere runs from corner to -corner, so its midpoint is the
        // quarter-turn of the corner about the owning center
        let corner = UnitVec3::normalize(self.g.cross(self.h)).expect("checked at construction");
        let quarter = |center: UnitVec3, other: UnitVec3| {
            let m = UnitVec3::normalize(center.cross(corner)).expect("corner is orthogonal to center");
            if m.dot(other) >= 0.0 {
                m
            } else {
                -m
            }
        };
        (quarter(self.g, self.h), quarter(self.h, self.g))
    }
}

/// Thickness of a lune: distance between the midpoints of its two boundary arcs.
pub fn lune_thickness(l: &Lune) -> f64 {
    let (mg, mh) = l.boundary_midpoints();
    let t = sph_dist(mg, mh);
    debug_assert!(
        (t - (PI - sph_dist(l.g, l.h))).abs() < 1e-12,
        "lune midpoint construction disagrees with pi - |gh|"
    );
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::angle_at;
    use std::f64::consts::FRAC_PI_2;

    fn v(x: f64, y: f64, z: f64) -> UnitVec3 {
        UnitVec3::new(x, y, z).unwrap()
    }

    #[test]
    fn circle_through_axes() {
        let c = great_circle_through(UnitVec3::X, UnitVec3::Y).unwrap();
        assert!(sph_dist(c.normal, UnitVec3::Z) < 1e-15);
        let c = great_circle_through(UnitVec3::X, v(1.0, 1.0, 0.0)).unwrap();
        assert!(sph_dist(c.normal, UnitVec3::Z) < 1e-15);
    }

    #[test]
    fn circle_through_antipodes_fails() {
        assert_eq!(
            great_circle_through(UnitVec3::X, -UnitVec3::X),
            Err(GeomError::DegenerateArc)
        );
        assert_eq!(
            great_circle_through(UnitVec3::X, UnitVec3::X),
            Err(GeomError::DegenerateArc)
        );
    }

    #[test]
    fn circle_contains_its_points() {
        let a = v(0.3, -0.4, 0.8);
        let b = v(-0.1, 0.9, 0.2);
        let c = great_circle_through(a, b).unwrap();
        assert!(a.dot(c.normal).abs() < 1e-12);
        assert!(b.dot(c.normal).abs() < 1e-12);
    }

    #[test]
    fn projection_examples() {
        let eq = GreatCircle::from_normal(UnitVec3::Z);
        let t = project_to_circle(v(1.0, 0.0, 1.0), &eq).unwrap();
        assert!(sph_dist(t, UnitVec3::X) < 1e-15);
        let p = v(0.6, 0.8, 0.0);
        assert!(sph_dist(project_to_circle(p, &eq).unwrap(), p) < 1e-15);
        assert_eq!(project_to_circle(UnitVec3::Z, &eq), Err(GeomError::PoleProjection));
    }

    #[test]
    fn projection_distance_identity() {
        let l = great_circle_through(v(0.2, 0.1, 0.9), v(-0.7, 0.3, 0.4)).unwrap();
        let p = v(0.5, -0.5, 0.3);
        let t = project_to_circle(p, &l).unwrap();
        let lhs = sph_dist(p, t);
        let rhs = FRAC_PI_2 - sph_dist(p, l.normal).min(sph_dist(p, -l.normal));
        assert!((lhs - rhs).abs() < 1e-12);
        // projection meets the circle at a right angle
        let on_circle = UnitVec3::normalize(l.normal.cross(t)).unwrap();
        assert!((angle_at(t, p, on_circle) - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn shared_endpoint_intersection() {
        let u = GeodesicArc::new(UnitVec3::X, UnitVec3::Y).unwrap();
        let m = v(1.0, 1.0, 0.0);
        let w = GeodesicArc::new(UnitVec3::Z, m).unwrap();
        let p = arcs_intersection(&u, &w).unwrap().unwrap();
        assert!(sph_dist(p, m) < 1e-12);
    }

    #[test]
    fn disjoint_arcs_do_not_meet() {
        let u = GeodesicArc::new(UnitVec3::X, v(1.0, 0.1, 0.0)).unwrap();
        let w = GeodesicArc::new(v(0.0, 1.0, 0.1), v(0.0, 1.0, 0.2)).unwrap();
        assert_eq!(arcs_intersection(&u, &w).unwrap(), None);
    }

    #[test]
    fn coplanar_arcs_rejected() {
        let u = GeodesicArc::new(UnitVec3::X, v(1.0, 1.0, 0.0)).unwrap();
        let w = GeodesicArc::new(UnitVec3::Y, v(-1.0, 1.0, 0.0)).unwrap();
        assert_eq!(arcs_intersection(&u, &w), Err(GeomError::CoplanarArcs));
    }

    #[test]
    fn symmetric_crossing_matches_dense_sampling() {
        let target = v(1.0, 1.0, 0.0);
        let u = GeodesicArc::new(v(1.0, 1.0, -0.5), v(1.0, 1.0, 0.5)).unwrap();
        let w = GeodesicArc::new(v(1.0, 0.6, 0.0), v(0.6, 1.0, 0.0)).unwrap();
        let p = arcs_intersection(&u, &w).unwrap().unwrap();
        assert!(sph_dist(p, target) < 1e-12);

        // oracle: closest pair of samples along both arcs
        let k = 2000;
        let mut best = (f64::INFINITY, UnitVec3::X);
        for i in 0..=k {
            let a = u.start().slerp(u.end(), i as f64 / k as f64);
            for j in 0..=k {
                let b = w.start().slerp(w.end(), j as f64 / k as f64);
                let d = sph_dist(a, b);
                if d < best.0 {
                    best = (d, a);
                }
            }
        }
        assert!(best.0 < 1e-3);
        assert!(sph_dist(best.1, p) < 1e-3);
    }

    #[test]
    fn lune_examples() {
        let l = Lune::new(UnitVec3::Z, UnitVec3::Y).unwrap();
        assert!((lune_thickness(&l) - FRAC_PI_2).abs() < 1e-15);

        let eps = 1e-3;
        let h = UnitVec3::from_spherical(PI - eps, 0.0);
        let l = Lune::new(UnitVec3::Z, h).unwrap();
        assert!((lune_thickness(&l) - eps).abs() < 1e-12);

        assert_eq!(Lune::new(UnitVec3::Z, -UnitVec3::Z), Err(GeomError::DegenerateLune));
    }

    #[test]
    fn lune_midpoints_lie_on_boundaries() {
        let l = Lune::new(v(0.1, 0.2, 0.9), v(-0.6, 0.1, 0.3)).unwrap();
        let (g, h) = l.centers();
        let (mg, mh) = l.boundary_midpoints();
        assert!(mg.dot(g).abs() < 1e-15 && mh.dot(h).abs() < 1e-15);
        assert!(l.contains(mg, 1e-15) && l.contains(mh, 1e-15));
    }
}
