//! Per-vertex decomposition of a reduced odd-gon.
//!
//! For vertex `v_i` with opposite side `v_j v_k` (`k = i + (n+1)/2`):
//!
//! - `t_i` is the projection of `v_i` on the great circle of `v_j v_k`;
//! - `o_i` is the crossing of the chords `v_i t_i` and `v_k t_k`
//!   (`t_k` lies on the side `v_i v_{i+1}`);
//! - `alpha_i = <v_{i+1} v_i t_i`, `beta_i = <t_i v_i v_k`, `phi_i = <v_i o_i t_k`;
//! - `b_i = |o_i t_i|`, `c_i = |o_i v_k|`, `y_i = tan b_i`.

use std::f64::consts::{FRAC_PI_2, PI};

use sphere_core::circle::{arcs_intersection, GeodesicArc};
use sphere_core::vector::angle_at;
use sphere_core::{sph_dist, SphericalPolygon, UnitVec3};

use crate::criterion::{is_reduced, opposite_side_indices, project_on_side, REDUCED_TOL};
use crate::error::{ReducedError, Result};
use crate::scalar::{Abscissa, ThicknessProfile};

/// Tolerance for the invariants checked on a reduced decomposition.
pub const INVARIANT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexData {
    pub t: UnitVec3,
    pub o: UnitVec3,
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
    pub b: f64,
    pub c: f64,
    pub y: f64,
}

/// Worst-case residuals of the decomposition invariants.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InvariantResiduals {
    /// `max |b_i + c_i - omega|`.
    pub leg_sum: f64,
    /// `min phi_i` (must be positive).
    pub phi_lower_margin: f64,
    /// `min (pi/2 - phi_i)` (must be positive).
    pub phi_upper_margin: f64,
    /// `max (beta_i - alpha_i)`.
    pub beta_excess: f64,
    /// `max |y_i - g(phi_i)|`.
    pub tan_leg: f64,
    /// `max |alpha_i - f(y_i)|`.
    pub apex: f64,
}

impl InvariantResiduals {
    /// First invariant exceeding `tol`, with its residual.
    pub fn first_violation(&self, tol: f64) -> Option<(&'static str, f64)> {
        if self.leg_sum > tol {
            Some(("b + c = omega", self.leg_sum))
        } else if self.phi_lower_margin <= 0.0 {
            Some(("phi > 0", self.phi_lower_margin))
        } else if self.phi_upper_margin <= 0.0 {
            Some(("phi < pi/2", self.phi_upper_margin))
        } else if self.beta_excess > tol {
            Some(("beta <= alpha", self.beta_excess))
        } else if self.tan_leg > tol {
            Some(("y = g(phi)", self.tan_leg))
        } else if self.apex > tol {
            Some(("alpha = f(y)", self.apex))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReducedDecomposition {
    polygon: SphericalPolygon,
    profile: ThicknessProfile,
    rows: Vec<VertexData>,
}

impl ReducedDecomposition {
    pub fn polygon(&self) -> &SphericalPolygon {
        &self.polygon
    }

    pub fn profile(&self) -> &ThicknessProfile {
        &self.profile
    }

    pub fn omega(&self) -> f64 {
        self.profile.omega()
    }

    pub fn rows(&self) -> &[VertexData] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn phis(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.phi).collect()
    }

    pub fn phi_sum(&self) -> f64 {
        self.rows.iter().map(|r| r.phi).sum()
    }

    pub fn invariant_residuals(&self) -> InvariantResiduals {
        let p = &self.profile;
        let mut res = InvariantResiduals {
            phi_lower_margin: f64::INFINITY,
            phi_upper_margin: f64::INFINITY,
            beta_excess: f64::NEG_INFINITY,
            ..Default::default()
        };
        for r in &self.rows {
            res.leg_sum = res.leg_sum.max((r.b + r.c - p.omega()).abs());
            res.phi_lower_margin = res.phi_lower_margin.min(r.phi);
            res.phi_upper_margin = res.phi_upper_margin.min(FRAC_PI_2 - r.phi);
            res.beta_excess = res.beta_excess.max(r.beta - r.alpha);
            let g = p.abscissa_of_phi(r.phi.clamp(0.0, FRAC_PI_2)).x;
            res.tan_leg = res.tan_leg.max((r.y - g).abs());
            let f = p.alpha_at(Abscissa {
                x: r.y.clamp(0.0, p.x_max()),
                gap: (p.x_max() - r.y).max(0.0),
            });
            res.apex = res.apex.max((r.alpha - f).abs());
        }
        res
    }

    /// Reconstructs a decomposition from stored rows, e.g. a parsed document.
    pub fn from_parts(polygon: SphericalPolygon, profile: ThicknessProfile, rows: Vec<VertexData>) -> Result<Self> {
        if rows.len() != polygon.len() {
            return Err(ReducedError::Format(format!(
                "{} rows for a {}-gon",
                rows.len(),
                polygon.len()
            )));
        }
        Ok(ReducedDecomposition { polygon, profile, rows })
    }
}

/// Computes the decomposition of a convex odd-gon of thickness `omega`.
///
/// When the polygon passes [`is_reduced`] the invariants are checked at
/// [`INVARIANT_TOL`] and a violation is reported as
/// [`ReducedError::InvariantViolated`].
pub fn decompose(p: &SphericalPolygon, omega: f64) -> Result<ReducedDecomposition> {
    let n = p.len();
    if n % 2 == 0 {
        return Err(ReducedError::EvenGon(n));
    }
    let profile = ThicknessProfile::new(omega)?;
    if let Some(i) = p.convexity_violation() {
        return Err(ReducedError::NotReducedGeometry(format!(
            "polygon is not convex (index {i})"
        )));
    }

    let mut ts = Vec::with_capacity(n);
    for i in 0..n {
        let (j, k) = opposite_side_indices(i, n)?;
        let (t, margin) = project_on_side(p.vertex(i), p.vertex(j), p.vertex(k), REDUCED_TOL);
        match t {
            Some(t) if margin > 0.0 => ts.push(t),
            _ => {
                return Err(ReducedError::NotReducedGeometry(format!(
                    "projection of vertex {i} falls outside side ({j}, {k})"
                )))
            }
        }
    }

    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let (_, k) = opposite_side_indices(i, n)?;
        let v = p.vertex(i);
        let vk = p.vertex(k);
        let (ti, tk) = (ts[i], ts[k]);
        let chord_i = GeodesicArc::new(v, ti)?;
        let chord_k = GeodesicArc::new(vk, tk)?;
        let o = arcs_intersection(&chord_i, &chord_k).ok().flatten().ok_or_else(|| {
            ReducedError::NotReducedGeometry(format!("chords from vertices {i} and {k} do not cross"))
        })?;
        let b = sph_dist(o, ti);
        rows.push(VertexData {
            t: ti,
            o,
            alpha: angle_at(v, p.vertex(i + 1), ti),
            beta: angle_at(v, ti, vk),
            phi: angle_at(o, v, tk),
            b,
            c: sph_dist(o, vk),
            y: b.tan(),
        });
    }

    let d = ReducedDecomposition {
        polygon: p.clone(),
        profile,
        rows,
    };
    if is_reduced(p, REDUCED_TOL).reduced {
        if let Some((name, residual)) = d.invariant_residuals().first_violation(INVARIANT_TOL) {
            return Err(ReducedError::InvariantViolated { name, residual });
        }
    }
    Ok(d)
}

/// Area from the crossing angles: `2 sum F(phi_i) - (n - 2) pi`.
pub fn area_via_phi(d: &ReducedDecomposition) -> Result<f64> {
    let p = d.profile();
    // sum of pi/2 - F(phi_i) avoids cancelling n copies of pi/2
    let complement: f64 = d
        .rows()
        .iter()
        .map(|r| p.alpha_complement_of_phi(r.phi))
        .sum::<Result<f64>>()?;
    Ok(2.0 * PI - 2.0 * complement)
}
