//! Regular and perturbed reduced odd-gons.

use std::f64::consts::PI;

use rand::Rng;
use sphere_core::sample::rng_from_seed;
use sphere_core::vector::Rotation;
use sphere_core::{SphericalPolygon, UnitVec3};

use crate::area::check_odd;
use crate::criterion::{is_reduced, opposite_side_indices, REDUCED_TOL};
use crate::error::{domain, ReducedError, Result};
use crate::scalar::ThicknessProfile;
use crate::solver::{solve, SolverOptions};

/// Largest perturbation accepted by [`perturbed_reduced_polygon`].
pub const MAX_PERTURBATION: f64 = 0.5;
/// Retries with halved perturbation after an interiority failure.
pub const INTERIOR_RETRIES: usize = 3;
/// Minimum side-length spread for a result to count as non-regular.
pub const REGULARITY_SPREAD: f64 = 10.0 * REDUCED_TOL;

/// Regular reduced `n`-gon of thickness `omega`, centred on the north pole
/// with `v_0` at longitude 0.
///
/// The circumradius is `omega - b` with `tan b = g(pi/n)`.
pub fn regular_odd_gon(n: usize, omega: f64) -> Result<SphericalPolygon> {
    check_odd(n)?;
    let prof = ThicknessProfile::new(omega)?;
    let y = prof.abscissa_of_phi(PI / n as f64).x;
    let lam = prof.lambda();
    let colat = ((lam - y) / (1.0 + lam * y)).atan();
    let vertices = (0..n)
        .map(|k| UnitVec3::from_spherical(colat, 2.0 * PI * k as f64 / n as f64))
        .collect();
    Ok(SphericalPolygon::new(vertices)?)
}

/// Rotates the vertex centroid to the north pole, then `v_0` to longitude 0.
pub fn canonicalize(p: &SphericalPolygon) -> Result<SphericalPolygon> {
    let to_pole = Rotation::aligning(p.centroid()?, UnitVec3::Z);
    let (_, lon) = to_pole.apply(p.vertex(0)).to_spherical();
    let spin = Rotation::about_axis(UnitVec3::Z, -lon);
    let r = to_pole.then(spin);
    Ok(p.map_vertices(|v| r.apply(v))?)
}

fn vertices_from(x: &[f64]) -> Vec<UnitVec3> {
    x.chunks_exact(2)
        .map(|c| UnitVec3::from_spherical(c[0], c[1]))
        .collect()
}

/// `|v_i t_i| - omega` for every vertex, or `None` where a side degenerates.
fn residuals(x: &[f64], omega: f64) -> Option<Vec<f64>> {
    let v = vertices_from(x);
    let n = v.len();
    (0..n)
        .map(|i| {
            let (j, k) = opposite_side_indices(i, n).ok()?;
            let normal = UnitVec3::normalize(v[j].cross(v[k])).ok()?;
            let along = v[i].dot(normal).abs();
            let across = sphere_core::vector::norm(v[i].cross(normal));
            Some(along.atan2(across) - omega)
        })
        .collect()
}

fn side_spread(p: &SphericalPolygon) -> f64 {
    let s = p.side_lengths();
    let max = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = s.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

fn attempt(n: usize, omega: f64, seed: u64, delta: f64) -> Result<SphericalPolygon> {
    let start = regular_odd_gon(n, omega)?;
    let mut rng = rng_from_seed(seed);
    let x0: Vec<f64> = start
        .vertices()
        .iter()
        .flat_map(|v| {
            let (theta, lon) = v.to_spherical();
            [theta, lon]
        })
        .map(|c| c + rng.random_range(-delta..=delta))
        .collect();
    let sol = solve(|x| residuals(x, omega), &x0, &SolverOptions::default())?;
    let p = SphericalPolygon::new(vertices_from(&sol.x))
        .map_err(|e| ReducedError::RelativeInteriorViolated(e.to_string()))?;
    let report = is_reduced(&p, REDUCED_TOL);
    if !report.reduced {
        return Err(ReducedError::RelativeInteriorViolated(
            report.reason.unwrap_or_default(),
        ));
    }
    canonicalize(&p)
}

/// A non-regular reduced `n`-gon of thickness `omega` near the regular one.
///
/// The regular polygon's spherical coordinates get seeded uniform noise in
/// `[-delta, delta]`, then a damped minimal-norm Gauss-Newton solve restores
/// equal vertex-to-opposite-side distances. If the result fails the
/// interiority clause, `delta` is halved and the attempt repeated up to
/// [`INTERIOR_RETRIES`] times. Every reduced triangle is regular, so `n = 3`
/// returns the regular triangle; so does `delta = 0`.
pub fn perturbed_reduced_polygon(n: usize, omega: f64, seed: u64, delta: f64) -> Result<SphericalPolygon> {
    check_odd(n)?;
    ThicknessProfile::new(omega)?;
    if !(delta.is_finite() && (0.0..=MAX_PERTURBATION).contains(&delta)) {
        return Err(domain(format!(
            "perturbation {delta} must lie in [0, {MAX_PERTURBATION}]"
        )));
    }
    if delta == 0.0 || n == 3 {
        return regular_odd_gon(n, omega);
    }
    let mut delta = delta;
    let mut last = None;
    for _ in 0..=INTERIOR_RETRIES {
        match attempt(n, omega, seed, delta) {
            Ok(p) => {
                let spread = side_spread(&p);
                if spread <= REGULARITY_SPREAD {
                    return Err(ReducedError::CollapsedToRegular(spread));
                }
                return Ok(p);
            }
            Err(e @ ReducedError::RelativeInteriorViolated(_)) => {
                last = Some(e);
                delta /= 2.0;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt ran"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use sphere_core::{girard_area, sph_dist};

    #[test]
    fn regular_vertices_equidistant_from_opposite_sides() {
        let p = regular_odd_gon(3, PI / 4.0).unwrap();
        let r = is_reduced(&p, 1e-9);
        assert!(r.reduced, "{:?}", r.reason);
        for v in &r.vertices {
            assert!((v.distance - PI / 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn many_sides_approach_half_thickness_circle() {
        let omega = 0.9;
        let mut last = f64::INFINITY;
        for n in [5usize, 51, 501, 5001] {
            let p = regular_odd_gon(n, omega).unwrap();
            let gap = (p.vertex(0).to_spherical().0 - omega / 2.0).abs();
            assert!(gap < last);
            last = gap;
        }
        assert!(last < 1e-6);
    }

    #[test]
    fn regular_is_canonical() {
        let p = regular_odd_gon(7, 1.0).unwrap();
        let c = canonicalize(&p).unwrap();
        for (a, b) in p.vertices().iter().zip(c.vertices()) {
            assert!(sph_dist(*a, *b) < 1e-12);
        }
    }

    #[test]
    fn residuals_vanish_on_regular() {
        let p = regular_odd_gon(9, 0.6).unwrap();
        let x: Vec<f64> = p
            .vertices()
            .iter()
            .flat_map(|v| {
                let (t, l) = v.to_spherical();
                [t, l]
            })
            .collect();
        for r in residuals(&x, 0.6).unwrap() {
            assert!(r.abs() < 1e-12);
        }
    }

    #[test]
    fn perturbed_pentagon() {
        let p = perturbed_reduced_polygon(5, 0.8, 42, 0.03).unwrap();
        let r = is_reduced(&p, REDUCED_TOL);
        assert!(r.reduced, "{:?}", r.reason);
        assert!((r.mean_distance.unwrap() - 0.8).abs() < 1e-9);
        assert!(side_spread(&p) > REGULARITY_SPREAD);
        assert!(girard_area(&p).unwrap() < crate::area::regular_area(5, 0.8).unwrap());
        // canonical pose
        assert!(sph_dist(p.centroid().unwrap(), UnitVec3::Z) < 1e-12);
        assert!(p.vertex(0).y().abs() < 1e-12 && p.vertex(0).x() > 0.0);
    }

    #[test]
    fn perturbed_is_deterministic() {
        let a = perturbed_reduced_polygon(7, 1.0, 9, 0.02).unwrap();
        let b = perturbed_reduced_polygon(7, 1.0, 9, 0.02).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_perturbation_is_regular() {
        assert_eq!(
            perturbed_reduced_polygon(5, 0.8, 1, 0.0).unwrap(),
            regular_odd_gon(5, 0.8).unwrap()
        );
        assert_eq!(
            perturbed_reduced_polygon(3, 0.8, 1, 0.03).unwrap(),
            regular_odd_gon(3, 0.8).unwrap()
        );
    }

    #[test]
    fn domain_checks() {
        assert_eq!(regular_odd_gon(6, 0.5).unwrap_err(), ReducedError::EvenGon(6));
        assert!(regular_odd_gon(5, 1.6).is_err());
        assert!(perturbed_reduced_polygon(5, 0.8, 1, -0.1).is_err());
        assert!(perturbed_reduced_polygon(5, 0.8, 1, f64::NAN).is_err());
    }
}
