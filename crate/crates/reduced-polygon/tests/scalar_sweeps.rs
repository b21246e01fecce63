//! Monotonicity and concavity sweeps of the scalar functions.

use std::f64::consts::FRAC_PI_2;

use reduced_polygon::ThicknessProfile;

const LAMBDAS: [f64; 7] = [0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0];
const POINTS: usize = 512;

#[test]
fn complement_ratio_strictly_decreasing() {
    for lam in LAMBDAS {
        let p = ThicknessProfile::from_lambda(lam).unwrap();
        let xs: Vec<f64> = (1..=POINTS)
            .map(|k| p.x_max() * k as f64 / (POINTS + 1) as f64)
            .collect();
        let ratios: Vec<f64> = xs.iter().map(|&x| p.complement_ratio(x).unwrap()).collect();
        for w in ratios.windows(2) {
            assert!(w[1] - w[0] < 0.0, "lambda {lam}");
        }
        let h = 1e-7 * p.x_max();
        for &x in &xs {
            let d = (p.complement_ratio(x + h).unwrap() - p.complement_ratio(x - h).unwrap()) / (2.0 * h);
            assert!(d < 0.0, "lambda {lam} x {x}: {d}");
        }
        // bounded below by the endpoint limit
        assert!(*ratios.last().unwrap() > p.complement_ratio_limit());
    }
}

#[test]
fn alpha_of_phi_decreasing_and_concave() {
    let h = 1e-5;
    for lam in LAMBDAS {
        let p = ThicknessProfile::from_lambda(lam).unwrap();
        for k in 1..=POINTS {
            let phi = FRAC_PI_2 * k as f64 / (POINTS + 1) as f64;
            let lo = (phi - h).max(1e-9);
            let hi = (phi + h).min(FRAC_PI_2 - 1e-9);
            let f = |x| p.alpha_of_phi(x).unwrap();
            let d1 = (f(hi) - f(lo)) / (hi - lo);
            let closed = p.alpha_of_phi_derivative(phi).unwrap();
            assert!(closed < 0.0 && d1 < 0.0);
            assert!(((d1 - closed) / closed).abs() < 1e-4, "lambda {lam} phi {phi}");
            // second difference of pi/2 - F, which is small near phi = 0 and
            // so keeps its rounding error far below the curvature term
            let c = |x| p.alpha_complement_of_phi(x).unwrap();
            let h2 = 1e-2 * phi.min(FRAC_PI_2 - phi);
            let d2 = -(c(phi + h2) - 2.0 * c(phi) + c(phi - h2)) / (h2 * h2);
            assert!(d2 < 0.0, "lambda {lam} phi {phi}: {d2}");
        }
    }
}
