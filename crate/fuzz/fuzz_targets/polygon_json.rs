#![no_main]

use libfuzzer_sys::fuzz_target;
use sphere_core::io::PolygonDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = PolygonDocument::parse_bytes(data) else {
        return;
    };
    let Ok(loaded) = doc.into_polygon() else {
        return;
    };
    let p = loaded.polygon;
    // downstream consumers must not panic on anything the loader accepts
    let _ = sphere_core::girard_area(&p);
    let _ = sphere_core::area_oracle_triangulated(&p);
    let report = reduced_polygon::is_reduced(&p, reduced_polygon::REDUCED_TOL);
    if let Some(omega) = report.mean_distance.filter(|_| report.reduced) {
        let _ = reduced_polygon::decompose(&p, omega);
    }
    let text = sphere_core::io::polygon_to_json(&p, loaded.thickness_hint);
    assert!(sphere_core::io::load_polygon(&text).is_ok());
});
