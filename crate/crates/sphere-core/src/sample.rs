//! Seeded random sampling on the sphere.
//!
//! All generators are `ChaCha8Rng` (the ChaCha stream cipher with 8 rounds,
//! from `rand_chacha`), seeded with `seed_from_u64`. A fixed seed and call
//! sequence reproduces the same stream bit for bit on every platform.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::polygon::{is_spherically_convex, SphericalPolygon};
use crate::vector::{add, cross, scale, UnitVec3};

/// Name of the pinned generator, recorded in reports.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.9, seed_from_u64)";

pub type SphereRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SphereRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point on the sphere from a normalized Gaussian triple.
pub fn uniform_on_sphere<R: Rng + ?Sized>(rng: &mut R) -> UnitVec3 {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Ok(p) = UnitVec3::new(x, y, z) {
            return p;
        }
    }
}

/// Orthonormal tangent frame `(e1, e2)` at `center` with `e1 x e2 = center`.
pub fn tangent_frame(center: UnitVec3) -> (UnitVec3, UnitVec3) {
    let e1 = center.any_orthogonal();
    let e2 = UnitVec3::normalize(cross(center.to_array(), e1.to_array())).expect("e1 is orthogonal to center");
    (e1, e2)
}

/// Point at angular distance `rho` from `center` in direction `azimuth`
/// (measured from `e1` toward `e2` of [`tangent_frame`]).
pub fn offset_point(center: UnitVec3, frame: (UnitVec3, UnitVec3), rho: f64, azimuth: f64) -> UnitVec3 {
    let (e1, e2) = frame;
    let dir = add(scale(e1.to_array(), azimuth.cos()), scale(e2.to_array(), azimuth.sin()));
    UnitVec3::normalize(add(scale(center.to_array(), rho.cos()), scale(dir, rho.sin()))).expect("finite offset")
}

/// Uniform point in the spherical cap of angular radius `radius` about `center`.
pub fn uniform_in_cap<R: Rng + ?Sized>(
    rng: &mut R,
    center: UnitVec3,
    frame: (UnitVec3, UnitVec3),
    radius: f64,
) -> UnitVec3 {
    let h = 1.0 - radius.cos();
    let u: f64 = rng.random();
    let z = 1.0 - u * h;
    let rho = z.clamp(-1.0, 1.0).acos();
    let az = rng.random::<f64>() * 2.0 * PI;
    offset_point(center, frame, rho, az)
}

/// A random convex polygon: the hull of `k` uniform points in a cap of
/// angular radius `radius < pi/2`, traced counterclockwise.
///
/// The hull is taken in the gnomonic projection about the cap centre, which
/// maps great circles to lines and so preserves convexity. Draws again if the
/// hull has fewer than three vertices or nearly coincident ones.
pub fn random_convex_polygon<R: Rng + ?Sized>(rng: &mut R, k: usize, radius: f64) -> Result<SphericalPolygon> {
    assert!(k >= 3 && radius > 0.0 && radius < PI / 2.0);
    loop {
        let center = uniform_on_sphere(rng);
        let frame = tangent_frame(center);
        let pts: Vec<UnitVec3> = (0..k).map(|_| uniform_in_cap(rng, center, frame, radius)).collect();
        let planar: Vec<(f64, f64, usize)> = pts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let d = p.dot(center);
                (p.dot(frame.0) / d, p.dot(frame.1) / d, i)
            })
            .collect();
        let hull = planar_hull(planar);
        if hull.len() < 3 {
            continue;
        }
        let verts = hull.into_iter().map(|i| pts[i]).collect();
        match SphericalPolygon::new(verts) {
            Ok(p) if is_spherically_convex(&p) => return Ok(p),
            _ => continue,
        }
    }
}

/// Andrew's monotone chain; returns indices in counterclockwise order.
fn planar_hull(mut pts: Vec<(f64, f64, usize)>) -> Vec<usize> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let turn = |o: (f64, f64, usize), a: (f64, f64, usize), b: (f64, f64, usize)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64, usize)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-12 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64, usize)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-12 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|p| p.2).collect()
}
