use thiserror::Error;

/// Errors raised by the sphere primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("vector is zero or not finite")]
    InvalidVector,
    #[error("vector norm {norm} is not unit within {tolerance}")]
    NotUnit { norm: f64, tolerance: f64 },
    #[error("endpoints are equal or antipodal; the arc is undefined")]
    DegenerateArc,
    #[error("point coincides with a pole of the circle; projection is undefined")]
    PoleProjection,
    #[error("arcs lie on the same great circle")]
    CoplanarArcs,
    #[error("lune centers are equal or antipodal")]
    DegenerateLune,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("vertices {0} and {1} are antipodal")]
    AntipodalVertices(usize, usize),
    #[error("polygon is not spherically convex at vertex {0}")]
    NonConvex(usize),
    #[error("sample count must be positive")]
    InvalidSampleCount,
    #[error("thickness resolution must be at least {min}, got {got}")]
    InvalidResolution { got: usize, min: usize },
    #[error("malformed polygon document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
