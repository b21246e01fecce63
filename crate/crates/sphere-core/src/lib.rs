//! Geometry on the unit sphere `S^2`.
//!
//! Points are unit 3-vectors ([`UnitVec3`]); latitude/longitude appears only
//! in constructors and conversions. Distances are computed with
//! `atan2(|a x b|, a . b)` throughout.
//!
//! The crate provides great circles, arcs, hemispheres and lunes, convex
//! spherical polygons with their interior angles and angular-excess area,
//! two independent area oracles (side-length triangulation and seeded Monte
//! Carlo), and a sampled thickness oracle based on the boundary of the dual
//! polygon.

pub mod circle;
pub mod error;
pub mod io;
pub mod oracle;
pub mod polygon;
pub mod sample;
pub mod thickness;
pub mod tolerance;
pub mod vector;

pub use circle::{
    arcs_intersection, great_circle_through, lune_thickness, project_to_circle, GeodesicArc, GreatCircle, Hemisphere,
    Lune,
};
pub use error::{GeomError, Result};
pub use io::PolygonDocument;
pub use oracle::{area_oracle_montecarlo, area_oracle_triangulated, MonteCarloArea};
pub use polygon::{contains_point_convex, girard_area, interior_angles, is_spherically_convex, SphericalPolygon};
pub use thickness::{thickness, ThicknessEstimate};
pub use tolerance::Tolerances;
pub use vector::{sph_dist, Rotation, UnitVec3};
