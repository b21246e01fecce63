//! `measure`: areas, thickness and reducedness of one polygon.

use std::fmt::Write as _;

use reduced_polygon::{area_via_phi, decompose, is_reduced, ReducedDecomposition, ReducednessReport, REDUCED_TOL};
use serde::Serialize;
use sphere_core::thickness::DEFAULT_RESOLUTION;
use sphere_core::{
    area_oracle_montecarlo, area_oracle_triangulated, girard_area, interior_angles, thickness, SphericalPolygon,
};

/// Monte Carlo settings used by `measure`.
pub const MEASURE_SAMPLES: u64 = 1_000_000;
pub const MEASURE_SEED: u64 = 0;

#[derive(Debug, Clone, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexRow {
    pub i: usize,
    pub vertex: [f64; 3],
    pub interior_angle: Option<f64>,
    /// Length of the side from this vertex to the next.
    pub side: f64,
    pub opposite_distance: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Measurement {
    pub n: usize,
    pub convex: bool,
    pub girard_area: Option<f64>,
    pub triangulated_area: Option<f64>,
    pub montecarlo_area: Option<Estimate>,
    pub montecarlo_samples: u64,
    pub thickness: Option<Estimate>,
    pub thickness_hint: Option<f64>,
    pub reduced: bool,
    pub reducedness: ReducednessReport,
    pub phi_sum: Option<f64>,
    pub area_via_phi: Option<f64>,
    pub vertices: Vec<VertexRow>,
    pub warnings: Vec<String>,
}

/// Thickness used to decompose a reduced polygon: the common vertex to
/// opposite-side distance, else the hint.
fn decomposition_thickness(report: &ReducednessReport, hint: Option<f64>) -> Option<f64> {
    if report.reduced {
        report.mean_distance
    } else {
        hint
    }
}

pub fn decomposition_of(
    p: &SphericalPolygon,
    report: &ReducednessReport,
    hint: Option<f64>,
) -> Option<ReducedDecomposition> {
    if !report.reduced {
        return None;
    }
    decompose(p, decomposition_thickness(report, hint)?).ok()
}

pub fn measure(
    p: &SphericalPolygon,
    thickness_hint: Option<f64>,
    mut warnings: Vec<String>,
    mc_samples: u64,
) -> Measurement {
    let convex = p.convexity_violation().is_none();
    let girard = girard_area(p).ok();
    let triangulated = convex.then(|| area_oracle_triangulated(p).ok()).flatten();
    let mc = convex
        .then(|| area_oracle_montecarlo(p, mc_samples, MEASURE_SEED).ok())
        .flatten()
        .map(|m| Estimate {
            value: m.area,
            error: m.std_error,
        });
    let width = if convex {
        match thickness(p, DEFAULT_RESOLUTION) {
            Ok(t) => Some(Estimate {
                value: t.value,
                error: t.error,
            }),
            Err(e) => {
                warnings.push(format!("thickness: {e}"));
                None
            }
        }
    } else {
        None
    };
    let report = is_reduced(p, REDUCED_TOL);
    let d = decomposition_of(p, &report, thickness_hint);
    if report.reduced && d.is_none() {
        warnings.push("decomposition failed".to_string());
    }
    let angles = interior_angles(p).ok();
    let sides = p.side_lengths();
    let vertices = (0..p.len())
        .map(|i| {
            let row = d.as_ref().map(|d| d.rows()[i]);
            VertexRow {
                i: i + 1,
                vertex: p.vertex(i).to_array(),
                interior_angle: angles.as_ref().map(|a| a[i]),
                side: sides[i],
                opposite_distance: report.vertices.get(i).map(|v| v.distance),
                alpha: row.map(|r| r.alpha),
                beta: row.map(|r| r.beta),
                phi: row.map(|r| r.phi),
            }
        })
        .collect();
    Measurement {
        n: p.len(),
        convex,
        girard_area: girard,
        triangulated_area: triangulated,
        montecarlo_area: mc,
        montecarlo_samples: mc_samples,
        thickness: width,
        thickness_hint,
        reduced: report.reduced,
        phi_sum: d.as_ref().map(ReducedDecomposition::phi_sum),
        area_via_phi: d.as_ref().and_then(|d| area_via_phi(d).ok()),
        reducedness: report,
        vertices,
        warnings,
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.12}"))
}

impl Measurement {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("measurement is serializable");
        s.push('\n');
        s
    }

    /// Human-readable table.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "vertices          {}", self.n);
        let _ = writeln!(s, "convex            {}", self.convex);
        let _ = writeln!(s, "girard area       {}", opt(self.girard_area));
        let _ = writeln!(s, "triangulated area {}", opt(self.triangulated_area));
        if let Some(m) = &self.montecarlo_area {
            let _ = writeln!(
                s,
                "monte carlo area  {:.6} +- {:.1e} ({} samples)",
                m.value, m.error, self.montecarlo_samples
            );
        }
        if let Some(t) = &self.thickness {
            let _ = writeln!(s, "thickness         {:.9} +- {:.1e}", t.value, t.error);
        }
        match &self.reducedness.reason {
            Some(reason) if !self.reduced => {
                let _ = writeln!(s, "reduced           false ({reason})");
            }
            _ => {
                let _ = writeln!(s, "reduced           {}", self.reduced);
            }
        }
        let _ = writeln!(s, "sum of phi        {}", opt(self.phi_sum));
        let _ = writeln!(s, "area via phi      {}", opt(self.area_via_phi));
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:>5} {:>14} {:>14} {:>14} {:>14} {:>14} {:>14}",
            "i", "angle", "side", "opposite", "alpha", "beta", "phi"
        );
        let cell = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.10}"));
        for r in &self.vertices {
            let _ = writeln!(
                s,
                "{:>5} {:>14} {:>14} {:>14} {:>14} {:>14} {:>14}",
                r.i,
                cell(r.interior_angle),
                cell(Some(r.side)),
                cell(r.opposite_distance),
                cell(r.alpha),
                cell(r.beta),
                cell(r.phi)
            );
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use reduced_polygon::regular_odd_gon;
    use sphere_core::UnitVec3;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn regular_pentagon() {
        let p = regular_odd_gon(5, 0.8).unwrap();
        let m = measure(&p, Some(0.8), vec![], 20_000);
        assert!(m.reduced);
        assert!((m.phi_sum.unwrap() - PI).abs() < 1e-9);
        assert!((m.thickness.as_ref().unwrap().value - 0.8).abs() < 1e-4);
        assert!((m.area_via_phi.unwrap() - m.girard_area.unwrap()).abs() < 1e-9);
        assert_eq!(m.vertices.len(), 5);
        assert!(m.to_table().contains("reduced           true"));
    }

    #[test]
    fn octant() {
        let p = SphericalPolygon::new(vec![UnitVec3::X, UnitVec3::Y, UnitVec3::Z]).unwrap();
        let m = measure(&p, None, vec![], 20_000);
        assert!((m.girard_area.unwrap() - FRAC_PI_2).abs() < 1e-12);
        // thickness pi/2 is outside the reduced range
        assert!(!m.reduced && m.phi_sum.is_none());
    }

    #[test]
    fn non_convex_reports_reason() {
        let p = SphericalPolygon::new(vec![
            UnitVec3::from_spherical(0.5, 0.0),
            UnitVec3::from_spherical(0.1, 1.0),
            UnitVec3::from_spherical(0.5, 2.0),
            UnitVec3::from_spherical(0.5, 3.5),
            UnitVec3::from_spherical(0.5, 5.0),
        ])
        .unwrap();
        let m = measure(&p, None, vec![], 1_000);
        assert!(!m.convex && !m.reduced);
        assert!(m.reducedness.reason.as_deref().unwrap().contains("convex"));
        assert!(m.girard_area.is_none() && m.phi_sum.is_none());
        let v: serde_json::Value = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(v["reduced"], false);
    }
}
