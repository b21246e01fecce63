use std::f64::consts::PI;

use reduced_polygon::*;
use sphere_core::{girard_area, sph_dist, thickness, SphericalPolygon, UnitVec3};

#[test]
fn regular_heptagon_is_reduced() {
    let p = regular_odd_gon(7, 1.0).unwrap();
    let r = is_reduced(&p, REDUCED_TOL);
    assert!(r.reduced, "{:?}", r.reason);
    assert!((thickness(&p, 1024).unwrap().value - 1.0).abs() < 1e-6);
}

#[test]
fn regular_pentagon_thickness() {
    let p = regular_odd_gon(5, 0.8).unwrap();
    assert!((thickness(&p, 1024).unwrap().value - 0.8).abs() < 1e-6);
    let angles = sphere_core::interior_angles(&p).unwrap();
    for g in &angles {
        assert!((g - angles[0]).abs() < 1e-12);
    }
}

#[test]
fn pushed_vertex_breaks_exactly_its_constraints() {
    let n = 5;
    let p = regular_odd_gon(n, 0.8).unwrap();
    let (colat, lon) = p.vertex(0).to_spherical();
    let mut verts = p.vertices().to_vec();
    verts[0] = UnitVec3::from_spherical(colat + 0.05, lon);
    let pushed = SphericalPolygon::new(verts).unwrap();

    let before = is_reduced(&p, REDUCED_TOL);
    let after = is_reduced(&pushed, REDUCED_TOL);
    assert!(!after.reduced);
    assert!(after.reason.as_deref().unwrap().contains("differ"));
    // v_0 itself and the two vertices whose opposite side ends at v_0
    let affected = [0, n / 2, n / 2 + 1];
    for (a, b) in before.vertices.iter().zip(&after.vertices) {
        let change = (a.distance - b.distance).abs();
        if affected.contains(&a.index) {
            assert!(change > 1e-4, "vertex {}", a.index);
        } else {
            assert!(change < 1e-12, "vertex {}", a.index);
        }
    }
}

#[test]
fn perturbed_polygons_satisfy_all_invariants() {
    let mut count = 0;
    for n in [5usize, 7, 9] {
        for omega in [0.5, 0.8, 1.0] {
            for seed in 0..3u64 {
                let p = perturbed_reduced_polygon(n, omega, seed, 0.03).unwrap();
                let d = decompose(&p, omega).unwrap();
                let res = d.invariant_residuals();
                assert!(res.first_violation(INVARIANT_TOL).is_none(), "{res:?}");
                assert!(d.phi_sum() >= PI - 1e-9);
                let g = girard_area(&p).unwrap();
                assert!((area_via_phi(&d).unwrap() - g).abs() < 1e-9);
                assert!(g < regular_area(n, omega).unwrap());
                assert!(g < limit_area(omega).unwrap());
                assert!(jensen_gap(&d).unwrap() >= -1e-12);

                let bs = butterfly_decomposition(&d).unwrap();
                let total: f64 = bs.iter().map(|b| b.area).sum();
                assert!(total - g >= -1e-9);
                for b in &bs {
                    assert!((b.area - b.area_from_angles).abs() < 1e-9);
                    assert!(b.congruence_residual < 1e-9);
                }
                count += 1;
            }
        }
    }
    assert_eq!(count, 27);
}

#[test]
fn perturbed_chords_do_not_share_a_crossing() {
    let p = perturbed_reduced_polygon(7, 0.9, 5, 0.03).unwrap();
    let d = decompose(&p, 0.9).unwrap();
    let o0 = d.rows()[0].o;
    assert!(d.rows().iter().any(|r| sph_dist(r.o, o0) > 1e-6));
    let c = circumscribed_center(&p);
    assert!(c.spread > 0.0);
}

#[test]
fn perturbed_cover() {
    let p = perturbed_reduced_polygon(5, 0.8, 42, 0.03).unwrap();
    let d = decompose(&p, 0.8).unwrap();
    let c = butterfly_cover(&d, 100_000, 7).unwrap();
    assert_eq!(c.uncovered, 0, "{c:?}");
}

#[test]
fn regular_area_increases_toward_limit() {
    for omega in [0.2, 0.8, 1.4] {
        let lim = limit_area(omega).unwrap();
        let mut last = 0.0;
        for n in (3..=101).step_by(2) {
            let a = regular_area(n, omega).unwrap();
            assert!(a > last && a < lim);
            let p = regular_odd_gon(n, omega).unwrap();
            assert!((girard_area(&p).unwrap() - a).abs() < 1e-9);
            last = a;
        }
    }
}
