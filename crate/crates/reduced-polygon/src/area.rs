//! Closed-form areas of regular reduced odd-gons.

use std::f64::consts::PI;

use crate::decompose::ReducedDecomposition;
use crate::error::{domain, ReducedError, Result};
use crate::scalar::ThicknessProfile;

pub(crate) fn check_odd(n: usize) -> Result<()> {
    if n % 2 == 0 {
        return Err(ReducedError::EvenGon(n));
    }
    if n < 3 {
        return Err(domain(format!("need at least 3 vertices, got {n}")));
    }
    Ok(())
}

/// Both closed forms of the regular area, `(ratio form, crossing-angle form)`:
///
/// ```text
/// S = 2 pi - 2 pi f1(y) / f2(y)
/// S = 2 n F(pi/n) - (n - 2) pi  =  2 pi - 2 n f1(y)
/// ```
///
/// with `y = g(pi/n)`. They agree because `f2(y) = pi/n`.
pub fn regular_area_forms(n: usize, omega: f64) -> Result<(f64, f64)> {
    check_odd(n)?;
    let prof = ThicknessProfile::new(omega)?;
    let a = prof.abscissa_of_phi(PI / n as f64);
    let f1 = prof.alpha_complement_at(a);
    let f2 = prof.phi_at(a);
    Ok((2.0 * PI - 2.0 * PI * f1 / f2, 2.0 * PI - 2.0 * n as f64 * f1))
}

/// Area of the regular reduced `n`-gon of thickness `omega`.
pub fn regular_area(n: usize, omega: f64) -> Result<f64> {
    let (ratio, crossing) = regular_area_forms(n, omega)?;
    debug_assert!(
        (ratio - crossing).abs() < 1e-12,
        "regular area forms disagree: {ratio} vs {crossing}"
    );
    Ok(ratio)
}

/// Limit of [`regular_area`] as `n -> infinity`: `2 (1 - cos(omega/2)) pi`.
pub fn limit_area(omega: f64) -> Result<f64> {
    ThicknessProfile::new(omega)?;
    // 1 - cos(x) = 2 sin^2(x/2)
    Ok(4.0 * PI * (0.25 * omega).sin().powi(2))
}

/// Concavity witness for a decomposition: `F(mean phi) - mean F(phi)`,
/// non-negative whenever `F` is concave on the sampled crossing angles.
pub fn jensen_gap(d: &ReducedDecomposition) -> Result<f64> {
    let p = d.profile();
    let phis = d.phis();
    let mean = phis.iter().sum::<f64>() / phis.len() as f64;
    // compare complements to keep the values small
    let mean_of = phis
        .iter()
        .map(|&phi| p.alpha_complement_of_phi(phi))
        .sum::<Result<f64>>()?
        / phis.len() as f64;
    Ok(mean_of - p.alpha_complement_of_phi(mean)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn frozen_values() {
        // 40-digit reference evaluations
        let cases = [
            (3, FRAC_PI_4, 0.367_636_675_924_473_6),
            (5, 0.8, 0.463_482_709_052_586_3),
            (7, 1.0, 0.746_669_768_978_106_3),
        ];
        for (n, omega, want) in cases {
            let got = regular_area(n, omega).unwrap();
            assert!((got - want).abs() < 1e-14, "n {n}: {got} vs {want}");
        }
    }

    #[test]
    fn triangle_uses_known_tan_leg() {
        let prof = ThicknessProfile::new(FRAC_PI_4).unwrap();
        let y = prof.tan_leg(FRAC_PI_3).unwrap();
        assert!((y - (-1.5 + 17f64.sqrt() / 2.0) / 2.0).abs() < 1e-15);
        assert!((y - 0.280_776_406_404_415_1).abs() < 1e-15);
    }

    #[test]
    fn forms_agree() {
        for omega in [0.01, 0.2, 0.8, 1.4, 1.5] {
            for n in (3..=1001).step_by(2) {
                let (a, b) = regular_area_forms(n, omega).unwrap();
                assert!((a - b).abs() < 1e-12, "n {n} omega {omega}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn limit_value() {
        let want = 0.841_787_214_476_932_9;
        assert!((limit_area(FRAC_PI_3).unwrap() - want).abs() < 1e-15);
        assert!(((2.0 - 3f64.sqrt()) * PI - want).abs() < 1e-15);
        assert!(limit_area(1e-6).unwrap() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(regular_area(4, 0.5), Err(ReducedError::EvenGon(4)));
        assert!(regular_area(1, 0.5).is_err());
        assert!(regular_area(5, 1.6).is_err());
        assert!(limit_area(0.0).is_err());
    }
}
