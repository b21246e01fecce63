//! Verification suites.
//!
//! Every check is a named claim with a tolerance and a [`Sense`]. Grid cells
//! run in a work pool and emit observations; observations are merged per
//! claim by taking the worst margin, and records are sorted by claim id.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::time::Instant;

use rayon::prelude::*;
use reduced_polygon::{
    area_via_phi, butterfly_cover, butterfly_decomposition, circumscribed_center, decompose, is_reduced, jensen_gap,
    limit_area, perturbed_reduced_polygon, regular_area, regular_area_forms, regular_odd_gon, ReducedDecomposition,
    ThicknessProfile, REDUCED_TOL,
};
use sphere_core::tolerance::GEO_TOL;
use sphere_core::SphericalPolygon;
use sphere_core::{area_oracle_montecarlo, area_oracle_triangulated, girard_area, interior_angles, thickness};

use crate::error::{CliError, Result};
use crate::grid::SweepGrid;
use crate::report::{CheckRecord, Outcome, Sense, VerificationReport};

/// Suite selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Scalars,
    Polygons,
    Theorems,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Scalars => "scalars",
            Suite::Polygons => "polygons",
            Suite::Theorems => "theorems",
            Suite::All => "all",
        }
    }

    fn includes(self, group: Suite) -> bool {
        self == Suite::All || self == group
    }
}

/// Fault injected into the suite to confirm that checks can fail.
#[cfg(feature = "sabotage")]
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Sabotage {
    /// Adds `1e-3` to every angle-sum area compared against the crossing-angle formula.
    Girard,
}

#[cfg(feature = "sabotage")]
pub const SABOTAGE_BIAS: f64 = 1e-3;

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Worker count; `None` uses `SPHERIGON_THREADS` or the available parallelism.
    pub threads: Option<usize>,
    #[cfg(feature = "sabotage")]
    pub sabotage: Option<Sabotage>,
}

/// Strictness floor for claims of the form `q > 0`.
const STRICT: f64 = f64::EPSILON;
/// Lambdas of the scalar monotonicity and concavity sweeps.
pub const SWEEP_LAMBDAS: [f64; 7] = [0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0];
pub const SWEEP_POINTS: usize = 512;
pub const THICKNESS_RESOLUTION: usize = 1024;
/// Largest `n` of the regular-area monotonicity and limit sequences.
pub const SEQUENCE_N_MAX: usize = 1001;
/// Limit gap allowed at [`SEQUENCE_N_MAX`].
pub const LIMIT_GAP_TOL: f64 = 1e-3;
/// `(2 - sqrt 3) pi` to 40 digits, rounded to `f64`.
pub const LIMIT_AT_THIRD_PI: f64 = 0.841_787_214_476_932_925_143_051_993_632_538_571_542_1;

pub struct Claim {
    pub id: &'static str,
    pub group: Suite,
    pub sense: Sense,
    pub tolerance: f64,
    pub reference: &'static str,
}

macro_rules! claims {
    ($($id:literal, $group:ident, $sense:ident, $tol:expr, $reference:literal;)*) => {
        pub const CLAIMS: &[Claim] = &[$(Claim {
            id: $id,
            group: Suite::$group,
            sense: Sense::$sense,
            tolerance: $tol,
            reference: $reference,
        }),*];
    };
}

claims! {
    "scalar.endpoints", Scalars, Within, 1e-12,
        "f(x_max) = pi/2, f2(x_max) = 0 and f1 + f = pi/2";
    "scalar.tan-leg-limits", Scalars, Within, 1e-9,
        "g(phi) tends to 0 as phi -> pi/2 and to x_max as phi -> 0";
    "scalar.tan-leg-relation", Scalars, Within, 1e-12,
        "cos phi = g (1 + lambda g) / (lambda - g)";
    "scalar.arguments-in-unit-interval", Scalars, Exceeds, STRICT,
        "the arcsine and arccosine arguments of f and f2 lie in (0, 1)";
    "scalar.ratio-decreasing", Scalars, Exceeds, STRICT,
        "f1/f2 is a decreasing function of x (successive differences)";
    "scalar.ratio-slope-negative", Scalars, Exceeds, STRICT,
        "f1/f2 is a decreasing function of x (finite-difference derivative)";
    "scalar.apex-slope-negative", Scalars, Exceeds, STRICT,
        "F'(x) < 0 (closed form)";
    "scalar.apex-slope-closed-form", Scalars, Within, 1e-4,
        "closed-form F' agrees with a central difference of F (relative error)";
    "scalar.apex-concave", Scalars, Exceeds, STRICT,
        "F''(x) < 0 (second central difference)";

    "regular.reduced", Polygons, Within, REDUCED_TOL,
        "regular odd-gons of thickness below pi/2 are reduced (distance spread)";
    "regular.thickness", Polygons, Within, 1e-4,
        "sampled thickness of the regular odd-gon equals omega";
    "regular.concyclic", Polygons, Within, 1e-9,
        "all vertices of a regular polygon lie on one circle (radius spread)";
    "regular.equal-angles", Polygons, Within, 1e-12,
        "all interior angles of a regular polygon are equal";
    "area.oracles", Polygons, Within, 1e-9,
        "angle-excess area agrees with the fan-triangulated side-length oracle";
    "area.montecarlo", Polygons, Within, 3.0,
        "angle-excess area agrees with uniform sphere sampling (standard errors)";
    "perturbed.reduced", Polygons, Within, REDUCED_TOL,
        "constructed non-regular polygons pass the reducedness criterion (distance spread)";
    "perturbed.non-regular", Polygons, Exceeds, 10.0 * REDUCED_TOL,
        "constructed polygons are not regular (side-length spread)";
    "decomp.leg-sum", Polygons, Within, 1e-9,
        "b_i + c_i = omega";
    "decomp.phi-range", Polygons, Exceeds, STRICT,
        "0 < phi_i < pi/2 (distance to the nearer bound)";
    "decomp.beta-le-alpha", Polygons, AtLeast, 1e-9,
        "beta_i <= alpha_i (alpha_i - beta_i)";
    "decomp.tan-leg", Polygons, Within, 1e-9,
        "tan b_i = g(phi_i)";
    "decomp.apex", Polygons, Within, 1e-9,
        "alpha_i = f(y_i)";
    "decomp.congruent-triangles", Polygons, Within, 1e-9,
        "triangles v_i o_i t_k and v_k o_i t_i are congruent (side-length difference)";

    "area.phi-formula", Theorems, Within, 1e-9,
        "area = 2 sum f(y_i) - (n - 2) pi agrees with the angle-excess area";
    "phi-sum.regular", Theorems, Within, 1e-9,
        "for regular polygons phi_i = pi/n and sum phi_i = pi";
    "phi-sum.lower-bound", Theorems, AtLeast, 1e-9,
        "sum phi_i >= pi (sum phi_i - pi)";
    "butterfly.area-two-ways", Theorems, Within, 1e-9,
        "butterfly area = 2 (phi_i + alpha_i - pi/2)";
    "butterfly.area-sum", Theorems, AtLeast, 1e-9,
        "the polygon area is at most the sum of its butterfly areas";
    "butterfly.area-sum-regular", Theorems, Within, 1e-9,
        "the butterflies of a regular polygon tile it (area difference)";
    "butterfly.cover", Theorems, Within, GEO_TOL,
        "the butterflies cover the polygon (worst containment miss of sampled points)";
    "regular-area.forms-agree", Theorems, Within, 1e-12,
        "2 pi - 2 pi f1(y)/f2(y) equals 2 n F(pi/n) - (n - 2) pi";
    "regular-area.increasing", Theorems, Exceeds, 1e-12,
        "regular area increases with the odd number of vertices (smallest increment)";
    "regular-area.limit-gap-decreasing", Theorems, Exceeds, STRICT,
        "distance of the regular area to its limit decreases with n";
    "regular-area.limit-gap-at-1001", Theorems, Within, LIMIT_GAP_TOL,
        "regular area at n = 1001 is near 2 (1 - cos(omega/2)) pi";
    "limit-area.third-pi", Theorems, Within, 2.0 * f64::EPSILON,
        "limit area at omega = pi/3 is (2 - sqrt 3) pi (relative error)";
    "nonregular.below-regular", Theorems, Exceeds, STRICT,
        "a non-regular reduced n-gon has smaller area than the regular n-gon";
    "nonregular.below-limit", Theorems, Exceeds, STRICT,
        "a reduced polygon of thickness omega has area below 2 (1 - cos(omega/2)) pi";
    "jensen.concavity", Theorems, AtLeast, 1e-12,
        "mean F(phi_i) <= F(mean phi_i)";
}

pub fn claim(id: &str) -> &'static Claim {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("unknown claim {id}"))
}

#[derive(Debug, Clone)]
struct Observation {
    id: &'static str,
    observed: f64,
    case: String,
}

#[derive(Default)]
struct Sink {
    obs: Vec<Observation>,
}

impl Sink {
    fn push(&mut self, id: &'static str, observed: f64, case: impl Into<String>) {
        debug_assert!(CLAIMS.iter().any(|c| c.id == id), "unknown claim {id}");
        self.obs.push(Observation {
            id,
            observed,
            case: case.into(),
        });
    }

    /// Records a computation failure against `id`.
    fn fail(&mut self, id: &'static str, case: impl Into<String>) {
        self.push(id, f64::NAN, case);
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter()
        .fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

fn min_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(f64::INFINITY, |m, v| {
        if v.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.min(v)
        }
    })
}

enum Cell {
    Scalar { lambda: f64 },
    Regular { n: usize, omega: f64, seed: u64 },
    Perturbed { n: usize, omega: f64, seed: u64 },
    Sequence { omega: f64, n_max: usize },
    Constant,
}

struct Context {
    mc_samples: u64,
    #[cfg(feature = "sabotage")]
    sabotage: Option<Sabotage>,
}

impl Context {
    fn angle_area(&self, p: &SphericalPolygon) -> sphere_core::Result<f64> {
        let area = girard_area(p)?;
        #[cfg(feature = "sabotage")]
        if self.sabotage == Some(Sabotage::Girard) {
            return Ok(area + SABOTAGE_BIAS);
        }
        Ok(area)
    }
}

/// Default perturbation for the constructed polygons: a quarter of side
/// times exterior angle, which keeps the turning at every vertex positive,
/// capped at 0.03.
pub fn perturbation_for(n: usize, omega: f64) -> f64 {
    let Ok(p) = regular_odd_gon(n, omega) else {
        return 0.0;
    };
    let exterior = interior_angles(&p).map_or(0.0, |g| PI - g[0]);
    (0.25 * p.side_lengths()[0] * exterior).min(0.03)
}

fn mix_seed(seed: u64, n: usize, omega: f64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (n as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
        ^ omega.to_bits().rotate_left(17)
}

fn scalar_cell(lambda: f64, out: &mut Sink) {
    let case = format!("lambda={lambda}");
    let Ok(p) = ThicknessProfile::from_lambda(lambda) else {
        out.fail("scalar.endpoints", case);
        return;
    };
    let top = p.upper_endpoint();
    let xs: Vec<f64> = (1..=SWEEP_POINTS)
        .map(|k| p.x_max() * k as f64 / (SWEEP_POINTS + 1) as f64)
        .collect();
    let phis: Vec<f64> = (1..=SWEEP_POINTS)
        .map(|k| FRAC_PI_2 * k as f64 / (SWEEP_POINTS + 1) as f64)
        .collect();

    let complement_err = max_of(xs.iter().map(|&x| match (p.alpha(x), p.alpha_complement(x)) {
        (Ok(a), Ok(c)) => (a + c - FRAC_PI_2).abs(),
        _ => f64::NAN,
    }));
    let endpoint = max_of([(p.alpha_at(top) - FRAC_PI_2).abs(), p.phi_at(top).abs(), complement_err]);
    out.push("scalar.endpoints", endpoint, case.clone());

    let limits = max_of([
        p.tan_leg(FRAC_PI_2 - 1e-11).map_or(f64::NAN, f64::abs),
        p.tan_leg(1e-11).map_or(f64::NAN, |g| (g - p.x_max()).abs()),
    ]);
    out.push("scalar.tan-leg-limits", limits, case.clone());

    let lam = p.lambda();
    let relation = max_of(phis.iter().map(|&phi| {
        p.tan_leg(phi)
            .map_or(f64::NAN, |g| (g * (1.0 + lam * g) / (lam - g) - phi.cos()).abs())
    }));
    out.push("scalar.tan-leg-relation", relation, case.clone());

    let unit = min_of(xs.iter().map(|&x| {
        let u = x * (1.0 + lam * lam).sqrt() / (lam - x);
        let w = x * (1.0 + lam * x) / (lam - x);
        min_of([u, 1.0 - u, w, 1.0 - w])
    }));
    out.push("scalar.arguments-in-unit-interval", unit, case.clone());

    let ratios: Vec<f64> = xs.iter().map(|&x| p.complement_ratio(x).unwrap_or(f64::NAN)).collect();
    out.push(
        "scalar.ratio-decreasing",
        min_of(ratios.windows(2).map(|w| w[0] - w[1])),
        case.clone(),
    );
    let h = 1e-7 * p.x_max();
    let slope = min_of(
        xs.iter()
            .map(|&x| match (p.complement_ratio(x + h), p.complement_ratio(x - h)) {
                (Ok(a), Ok(b)) => -(a - b) / (2.0 * h),
                _ => f64::NAN,
            }),
    );
    out.push("scalar.ratio-slope-negative", slope, case.clone());

    let closed: Vec<f64> = phis
        .iter()
        .map(|&phi| p.alpha_of_phi_derivative(phi).unwrap_or(f64::NAN))
        .collect();
    out.push(
        "scalar.apex-slope-negative",
        min_of(closed.iter().map(|d| -d)),
        case.clone(),
    );

    // first differences of F; second differences of pi/2 - F, whose small
    // magnitude near phi = 0 keeps rounding far below the curvature term
    let f = |x: f64| p.alpha_of_phi(x).unwrap_or(f64::NAN);
    let c = |x: f64| p.alpha_complement_of_phi(x).unwrap_or(f64::NAN);
    let h = 1e-5;
    let rel = max_of(phis.iter().zip(&closed).map(|(&phi, &d)| {
        let lo = (phi - h).max(1e-9);
        let hi = (phi + h).min(FRAC_PI_2 - 1e-9);
        ((f(hi) - f(lo)) / (hi - lo) - d).abs() / d.abs()
    }));
    out.push("scalar.apex-slope-closed-form", rel, case.clone());
    let concave = min_of(phis.iter().map(|&phi| {
        let h2 = 1e-2 * phi.min(FRAC_PI_2 - phi);
        (c(phi + h2) - 2.0 * c(phi) + c(phi - h2)) / (h2 * h2)
    }));
    out.push("scalar.apex-concave", concave, case);
}

/// Checks shared by regular and perturbed polygons.
fn polygon_checks(
    ctx: &Context,
    p: &SphericalPolygon,
    d: &ReducedDecomposition,
    case: &str,
    mc_seed: u64,
    out: &mut Sink,
) {
    let girard = girard_area(p);
    match (&girard, area_oracle_triangulated(p)) {
        (Ok(g), Ok(t)) => out.push("area.oracles", (g - t).abs(), case),
        _ => out.fail("area.oracles", case),
    }
    match (&girard, area_oracle_montecarlo(p, ctx.mc_samples, mc_seed)) {
        (Ok(g), Ok(mc)) => out.push("area.montecarlo", mc.z_score(*g), case),
        _ => out.fail("area.montecarlo", case),
    }

    let res = d.invariant_residuals();
    out.push("decomp.leg-sum", res.leg_sum, case);
    out.push("decomp.phi-range", res.phi_lower_margin.min(res.phi_upper_margin), case);
    out.push("decomp.beta-le-alpha", -res.beta_excess, case);
    out.push("decomp.tan-leg", res.tan_leg, case);
    out.push("decomp.apex", res.apex, case);

    match (ctx.angle_area(p), area_via_phi(d)) {
        (Ok(g), Ok(a)) => out.push("area.phi-formula", (a - g).abs(), case),
        _ => out.fail("area.phi-formula", case),
    }
    match jensen_gap(d) {
        Ok(gap) => out.push("jensen.concavity", gap, case),
        Err(_) => out.fail("jensen.concavity", case),
    }

    match butterfly_decomposition(d) {
        Ok(bs) => {
            out.push(
                "decomp.congruent-triangles",
                max_of(bs.iter().map(|b| b.congruence_residual)),
                case,
            );
            out.push(
                "butterfly.area-two-ways",
                max_of(bs.iter().map(|b| (b.area - b.area_from_angles).abs())),
                case,
            );
            let total: f64 = bs.iter().map(|b| b.area).sum();
            match &girard {
                Ok(g) => out.push("butterfly.area-sum", total - g, case),
                Err(_) => out.fail("butterfly.area-sum", case),
            }
        }
        Err(_) => {
            out.fail("decomp.congruent-triangles", case);
            out.fail("butterfly.area-two-ways", case);
        }
    }
    match butterfly_cover(d, ctx.mc_samples, mc_seed ^ 0x5555) {
        Ok(cover) => out.push("butterfly.cover", (-cover.worst_margin).max(0.0), case),
        Err(_) => out.fail("butterfly.cover", case),
    }
}

fn regular_cell(ctx: &Context, n: usize, omega: f64, seed: u64, out: &mut Sink) {
    let case = format!("regular n={n} omega={omega}");
    let p = match regular_odd_gon(n, omega) {
        Ok(p) => p,
        Err(e) => {
            out.fail("regular.reduced", format!("{case}: {e}"));
            return;
        }
    };
    let report = is_reduced(&p, REDUCED_TOL);
    let spread = report.max_deviation.unwrap_or(f64::NAN);
    out.push(
        "regular.reduced",
        if report.reduced {
            spread
        } else {
            spread.max(REDUCED_TOL)
        },
        format!("{case} {}", report.reason.unwrap_or_default()),
    );
    match thickness(&p, THICKNESS_RESOLUTION) {
        Ok(t) => out.push("regular.thickness", (t.value - omega).abs(), &case),
        Err(e) => out.fail("regular.thickness", format!("{case}: {e}")),
    }
    out.push("regular.concyclic", circumscribed_center(&p).spread, &case);
    match interior_angles(&p) {
        Ok(g) => out.push(
            "regular.equal-angles",
            max_of(g.iter().map(|a| (a - g[0]).abs())),
            &case,
        ),
        Err(_) => out.fail("regular.equal-angles", &case),
    }
    match regular_area_forms(n, omega) {
        Ok((a, b)) => out.push("regular-area.forms-agree", (a - b).abs(), &case),
        Err(_) => out.fail("regular-area.forms-agree", &case),
    }

    let d = match decompose(&p, omega) {
        Ok(d) => d,
        Err(e) => {
            out.fail("decomp.leg-sum", format!("{case}: {e}"));
            return;
        }
    };
    let phi_err = max_of(d.rows().iter().map(|r| (r.phi - PI / n as f64).abs()));
    out.push("phi-sum.regular", phi_err.max((d.phi_sum() - PI).abs()), &case);
    if let (Ok(bs), Ok(g)) = (butterfly_decomposition(&d), girard_area(&p)) {
        let total: f64 = bs.iter().map(|b| b.area).sum();
        out.push("butterfly.area-sum-regular", (total - g).abs(), &case);
    } else {
        out.fail("butterfly.area-sum-regular", &case);
    }
    out.push("phi-sum.lower-bound", d.phi_sum() - PI, &case);
    if let Ok(lim) = limit_area(omega) {
        if let Ok(g) = girard_area(&p) {
            out.push("nonregular.below-limit", lim - g, &case);
        }
    }
    polygon_checks(ctx, &p, &d, &case, mix_seed(seed, n, omega), out);
}

fn perturbed_cell(ctx: &Context, n: usize, omega: f64, seed: u64, out: &mut Sink) {
    let delta = perturbation_for(n, omega);
    let case = format!("perturbed n={n} omega={omega} seed={seed} delta={delta:.3e}");
    let p = match perturbed_reduced_polygon(n, omega, seed, delta) {
        Ok(p) => p,
        Err(e) => {
            out.fail("perturbed.reduced", format!("{case}: {e}"));
            return;
        }
    };
    let report = is_reduced(&p, REDUCED_TOL);
    let spread = report.max_deviation.unwrap_or(f64::NAN);
    out.push(
        "perturbed.reduced",
        if report.reduced {
            spread
        } else {
            spread.max(REDUCED_TOL)
        },
        &case,
    );
    let sides = p.side_lengths();
    out.push(
        "perturbed.non-regular",
        max_of(sides.iter().copied()) - min_of(sides.iter().copied()),
        &case,
    );
    let d = match decompose(&p, omega) {
        Ok(d) => d,
        Err(e) => {
            out.fail("decomp.leg-sum", format!("{case}: {e}"));
            return;
        }
    };
    out.push("phi-sum.lower-bound", d.phi_sum() - PI, &case);
    match (girard_area(&p), regular_area(n, omega), limit_area(omega)) {
        (Ok(g), Ok(reg), Ok(lim)) => {
            out.push("nonregular.below-regular", reg - g, &case);
            out.push("nonregular.below-limit", lim - g, &case);
        }
        _ => out.fail("nonregular.below-regular", &case),
    }
    polygon_checks(ctx, &p, &d, &case, mix_seed(seed, n, omega) ^ 1, out);
}

fn sequence_cell(omega: f64, n_max: usize, out: &mut Sink) {
    let case = format!("omega={omega}");
    let Ok(lim) = limit_area(omega) else {
        out.fail("regular-area.increasing", case);
        return;
    };
    let areas: Vec<f64> = (3..=n_max)
        .step_by(2)
        .map(|n| regular_area(n, omega).unwrap_or(f64::NAN))
        .collect();
    let increasing_to = (101.max(n_max.min(SEQUENCE_N_MAX)) - 3) / 2 + 1;
    out.push(
        "regular-area.increasing",
        min_of(areas[..increasing_to.min(areas.len())].windows(2).map(|w| w[1] - w[0])),
        format!("{case} n<={}", 2 * increasing_to + 1),
    );
    let gaps: Vec<f64> = areas.iter().map(|a| (a - lim).abs()).collect();
    out.push(
        "regular-area.limit-gap-decreasing",
        min_of(gaps.windows(2).map(|w| w[0] - w[1])),
        format!("{case} n<={n_max}"),
    );
    out.push(
        "regular-area.limit-gap-at-1001",
        *gaps.last().unwrap_or(&f64::NAN),
        case,
    );
}

fn constant_cell(out: &mut Sink) {
    match limit_area(FRAC_PI_3) {
        Ok(v) => out.push(
            "limit-area.third-pi",
            (v - LIMIT_AT_THIRD_PI).abs() / LIMIT_AT_THIRD_PI,
            "omega=pi/3",
        ),
        Err(_) => out.fail("limit-area.third-pi", "omega=pi/3"),
    }
}

fn cells(suite: Suite, grid: &SweepGrid) -> Vec<Cell> {
    let mut cells = Vec::new();
    let omegas = grid.thicknesses();
    if suite.includes(Suite::Scalars) {
        let mut lambdas: Vec<f64> = SWEEP_LAMBDAS
            .iter()
            .copied()
            .chain(omegas.iter().map(|w| w.tan()))
            .collect();
        lambdas.sort_by(f64::total_cmp);
        lambdas.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        cells.extend(lambdas.into_iter().map(|lambda| Cell::Scalar { lambda }));
    }
    if suite.includes(Suite::Polygons) || suite.includes(Suite::Theorems) {
        let ns = grid.sorted_n_values();
        for &omega in &omegas {
            for &n in &ns {
                cells.push(Cell::Regular {
                    n,
                    omega,
                    seed: grid.seeds[0],
                });
                if n >= 5 {
                    cells.extend(grid.seeds.iter().map(|&seed| Cell::Perturbed { n, omega, seed }));
                }
            }
        }
    }
    if suite.includes(Suite::Theorems) {
        let n_max = grid.sorted_n_values().last().copied().unwrap_or(3).max(SEQUENCE_N_MAX);
        cells.extend(omegas.iter().map(|&omega| Cell::Sequence { omega, n_max }));
        cells.push(Cell::Constant);
    }
    cells
}

fn run_cell(ctx: &Context, cell: &Cell) -> (Vec<Observation>, f64) {
    let start = Instant::now();
    let mut sink = Sink::default();
    match *cell {
        Cell::Scalar { lambda } => scalar_cell(lambda, &mut sink),
        Cell::Regular { n, omega, seed } => regular_cell(ctx, n, omega, seed, &mut sink),
        Cell::Perturbed { n, omega, seed } => perturbed_cell(ctx, n, omega, seed, &mut sink),
        Cell::Sequence { omega, n_max } => sequence_cell(omega, n_max, &mut sink),
        Cell::Constant => constant_cell(&mut sink),
    }
    (sink.obs, start.elapsed().as_secs_f64())
}

/// Worker count: explicit request, else `SPHERIGON_THREADS`, capped by the
/// available parallelism.
pub fn thread_count(requested: Option<usize>) -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cap = requested.or_else(|| {
        std::env::var("SPHERIGON_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
    });
    cap.map_or(available, |c| c.clamp(1, available.max(1)))
}

pub fn run_suite(suite: Suite, grid: &SweepGrid, opts: &VerifyOptions) -> Result<VerificationReport> {
    grid.validate()?;
    let start = Instant::now();
    let threads = thread_count(opts.threads);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let ctx = Context {
        mc_samples: grid.mc_samples,
        #[cfg(feature = "sabotage")]
        sabotage: opts.sabotage,
    };
    let cells = cells(suite, grid);
    let results: Vec<(Vec<Observation>, f64)> = pool.install(|| cells.par_iter().map(|c| run_cell(&ctx, c)).collect());

    let mut merged: BTreeMap<&'static str, Outcome> = BTreeMap::new();
    for (obs, secs) in results {
        let share = secs / obs.len().max(1) as f64;
        for o in obs {
            let c = claim(o.id);
            if !suite.includes(c.group) {
                continue;
            }
            let margin = c.sense.margin(o.observed, c.tolerance);
            let entry = merged.entry(o.id).or_insert_with(|| Outcome {
                margin: f64::INFINITY,
                observed: f64::NAN,
                cases: 0,
                runtime_s: 0.0,
                worst_case: String::new(),
            });
            entry.cases += 1;
            entry.runtime_s += share;
            if margin < entry.margin || entry.cases == 1 {
                entry.margin = margin;
                entry.observed = o.observed;
                entry.worst_case = o.case;
            }
        }
    }
    let records = merged
        .into_iter()
        .map(|(id, outcome)| {
            let c = claim(id);
            CheckRecord::new(id, c.reference, c.sense, c.tolerance, outcome)
        })
        .collect();
    Ok(VerificationReport::new(
        suite.name(),
        grid.clone(),
        threads,
        records,
        start.elapsed().as_secs_f64(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> SweepGrid {
        SweepGrid {
            lambda_values: vec![1.0],
            n_values: vec![3, 5],
            omega_values: vec![],
            seeds: vec![4],
            mc_samples: 20_000,
        }
    }

    #[test]
    fn claim_ids_unique_and_sorted_output() {
        let mut ids: Vec<_> = CLAIMS.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        let len = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), len);
        assert!(CLAIMS.iter().all(|c| c.tolerance > 0.0));
    }

    #[test]
    fn scalar_suite_passes() {
        let r = run_suite(Suite::Scalars, &small_grid(), &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{}", r.to_canonical_json());
        assert!(r.records.iter().all(|c| c.id.starts_with("scalar.")));
        assert!(r.records.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn small_full_suite_passes() {
        let r = run_suite(Suite::All, &small_grid(), &VerifyOptions::default()).unwrap();
        let failures: Vec<_> = r.failures().map(|f| (&f.id, f.margin, &f.worst_case)).collect();
        assert!(r.pass, "{failures:?}");
        for rec in &r.records {
            assert!(rec.margin.is_finite() && rec.tolerance > 0.0);
        }
    }

    #[test]
    fn invalid_grid_rejected() {
        let grid = SweepGrid {
            omega_values: vec![1.57],
            ..small_grid()
        };
        assert!(matches!(
            run_suite(Suite::All, &grid, &VerifyOptions::default()),
            Err(CliError::Grid(_))
        ));
    }

    #[test]
    fn thread_cap() {
        assert_eq!(thread_count(Some(1)), 1);
        assert!(thread_count(Some(10_000)) >= 1);
        assert!(thread_count(None) >= 1);
    }

    #[test]
    fn perturbation_shrinks_with_side() {
        assert_eq!(perturbation_for(5, 0.8), 0.03);
        assert!(perturbation_for(101, 0.2) < 1e-4);
    }
}
