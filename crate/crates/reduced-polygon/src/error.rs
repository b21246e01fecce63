use sphere_core::GeomError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReducedError {
    #[error("n must be odd, got {0}")]
    EvenGon(usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not a reduced configuration: {0}")]
    NotReducedGeometry(String),
    #[error("reduced-polygon invariant violated: {name} residual {residual:e}")]
    InvariantViolated { name: &'static str, residual: f64 },
    #[error("solver did not converge after {iterations} iterations (max residual {residual:e})")]
    SolverDiverged { iterations: usize, residual: f64 },
    #[error("solved polygon failed the relative-interior condition: {0}")]
    RelativeInteriorViolated(String),
    #[error("perturbation collapsed to a regular polygon (side spread {0:e})")]
    CollapsedToRegular(f64),
    #[error("malformed decomposition document: {0}")]
    Format(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type Result<T> = std::result::Result<T, ReducedError>;

pub(crate) fn domain(msg: impl Into<String>) -> ReducedError {
    ReducedError::Domain(msg.into())
}
