//! Reduced spherical odd-gons.
//!
//! A convex spherical polygon is reduced when every proper convex subset
//! has smaller thickness. Reduced polygons are odd-gons; for thickness
//! `omega < pi/2` each vertex lies at distance `omega` from the great circle
//! of its opposite side and projects into that side's relative interior.
//!
//! This crate provides:
//!
//! - the scalar functions of [`ThicknessProfile`] relating the crossing
//!   angles `phi_i` to the apex angles `alpha_i`;
//! - [`is_reduced`] and [`decompose`], which computes per-vertex
//!   projections, chord crossings and characteristic angles;
//! - constructors for regular ([`regular_odd_gon`]) and non-regular
//!   ([`perturbed_reduced_polygon`]) reduced polygons;
//! - the area formulas [`area_via_phi`], [`regular_area`], [`limit_area`].
//!
//! Indices are 0-based; vertex `i` faces side `(i + (n-1)/2, i + (n+1)/2)`.

pub mod area;
pub mod butterfly;
pub mod circumcenter;
pub mod construct;
pub mod criterion;
pub mod decompose;
pub mod error;
pub mod io;
pub mod scalar;
pub mod solver;

pub use area::{jensen_gap, limit_area, regular_area, regular_area_forms};
pub use butterfly::{butterfly_cover, butterfly_decomposition, Butterfly, CoverReport};
pub use circumcenter::{circumscribed_center, Circumcircle};
pub use construct::{canonicalize, perturbed_reduced_polygon, regular_odd_gon};
pub use criterion::{is_reduced, opposite_side_indices, ReducednessReport, VertexCheck, REDUCED_TOL};
pub use decompose::{area_via_phi, decompose, InvariantResiduals, ReducedDecomposition, VertexData, INVARIANT_TOL};
pub use error::{ReducedError, Result};
pub use io::{DecompRow, DecompositionDocument, DECOMP_FORMAT};
pub use scalar::{Abscissa, ThicknessProfile};
