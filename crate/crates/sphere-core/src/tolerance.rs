/// Numerical tolerances shared by the geometric predicates.
///
/// The defaults are the library-wide constants; every predicate that takes a
/// `&Tolerances` can be called with a custom record instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed deviation of a unit vector's norm from 1.
    pub unit_norm: f64,
    /// Incidence and containment slack, in radians.
    pub geo: f64,
    /// Slack for sign tests against edge normals (convexity, containment).
    pub half_space: f64,
    /// Norm below which a cross product is treated as zero.
    pub degenerate: f64,
}

pub const UNIT_NORM_TOL: f64 = 1e-12;
pub const GEO_TOL: f64 = 1e-9;
pub const HALF_SPACE_TOL: f64 = 1e-12;
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Maximum norm deviation accepted when loading vertices from a file.
pub const LOAD_UNIT_TOL: f64 = 1e-9;

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unit_norm: UNIT_NORM_TOL,
            geo: GEO_TOL,
            half_space: HALF_SPACE_TOL,
            degenerate: DEGENERATE_TOL,
        }
    }
}
