//! Static SVG figure: orthographic view of a polygon centred on its centroid,
//! with the chords `v_i t_i`, the feet `t_i` and the crossings `o_i` when the
//! polygon is reduced.

use std::fmt::Write as _;

use reduced_polygon::{is_reduced, REDUCED_TOL};
use sphere_core::{Rotation, SphericalPolygon, UnitVec3};

use crate::error::Result;
use crate::measure::decomposition_of;

pub const CANVAS: f64 = 600.0;
const PADDING: f64 = 40.0;

struct Projection {
    rotation: Rotation,
    scale: f64,
}

impl Projection {
    fn fit(p: &SphericalPolygon) -> Result<Self> {
        let rotation = Rotation::aligning(p.centroid()?, UnitVec3::Z);
        let extent = p
            .vertices()
            .iter()
            .map(|&v| {
                let q = rotation.apply(v);
                q.x().abs().max(q.y().abs())
            })
            .fold(0.0_f64, f64::max)
            .max(1e-6);
        Ok(Projection {
            rotation,
            scale: (CANVAS / 2.0 - PADDING) / extent,
        })
    }

    /// Canvas coordinates, y pointing down.
    fn xy(&self, v: UnitVec3) -> (f64, f64) {
        let q = self.rotation.apply(v);
        (CANVAS / 2.0 + self.scale * q.x(), CANVAS / 2.0 - self.scale * q.y())
    }
}

fn point(out: &mut String, class: &str, (x, y): (f64, f64), r: f64) {
    let _ = writeln!(out, r#"  <circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{r}"/>"#);
}

/// Polygon edges are drawn as straight segments between projected vertices.
pub fn render_svg(p: &SphericalPolygon, thickness_hint: Option<f64>) -> Result<String> {
    let proj = Projection::fit(p)?;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(
        s,
        "  <style>.polygon{{fill:#eef3fb;stroke:#1f3b73;stroke-width:1.5}}.chord{{stroke:#b03a2e;stroke-width:0.8}}\
         .vertex{{fill:#1f3b73}}.foot{{fill:#ffffff;stroke:#b03a2e}}.crossing{{fill:#117a65}}</style>"
    );
    let pts: Vec<String> = p
        .vertices()
        .iter()
        .map(|&v| {
            let (x, y) = proj.xy(v);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(s, r#"  <polygon class="polygon" points="{}"/>"#, pts.join(" "));

    let report = is_reduced(p, REDUCED_TOL);
    if let Some(d) = decomposition_of(p, &report, thickness_hint) {
        for (i, r) in d.rows().iter().enumerate() {
            let (x1, y1) = proj.xy(p.vertex(i));
            let (x2, y2) = proj.xy(r.t);
            let _ = writeln!(
                s,
                r#"  <line class="chord" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
            );
        }
        for r in d.rows() {
            point(&mut s, "foot", proj.xy(r.t), 3.0);
        }
        for r in d.rows() {
            point(&mut s, "crossing", proj.xy(r.o), 2.0);
        }
    }
    for &v in p.vertices() {
        point(&mut s, "vertex", proj.xy(v), 4.0);
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}
