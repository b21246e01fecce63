//! Scalar functions of a reduced polygon's thickness.
//!
//! For thickness `omega` put `lambda = tan(omega)`. Each vertex `v_i` of a
//! reduced odd-gon owns a right triangle with legs `b_i` (on the chord from
//! `v_i`) and hypotenuse `c_i`, with `b_i + c_i = omega`; the angle at the
//! chord crossing is `phi_i`. Writing `y = tan(b_i)`:
//!
//! | method                         | maps       | closed form                                       |
//! |--------------------------------|------------|---------------------------------------------------|
//! | [`tan_leg`](ThicknessProfile::tan_leg)             | `phi -> y` | `(-(1+cos phi) + r) / (2 lambda)`, `r = sqrt((1+cos phi)^2 + 4 lambda^2 cos phi)` |
//! | [`alpha`](ThicknessProfile::alpha)                 | `y -> alpha` | `asin(y sqrt(1+lambda^2) / (lambda - y))`     |
//! | [`alpha_complement`](ThicknessProfile::alpha_complement) | `y -> pi/2 - alpha` | `acos(y sqrt(1+lambda^2) / (lambda - y))` |
//! | [`phi_of`](ThicknessProfile::phi_of)               | `y -> phi` | `acos(y (1 + lambda y) / (lambda - y))`           |
//! | [`alpha_of_phi`](ThicknessProfile::alpha_of_phi)   | `phi -> alpha` | `alpha(tan_leg(phi))`                         |
//!
//! The `y`-domain is `(0, x_max)` with `x_max = (-1 + sqrt(1+lambda^2)) / lambda
//! = tan(omega/2)`. `alpha` and `phi_of` have square-root singularities at
//! `x_max`, so evaluating them from `y` alone loses half the significant
//! digits there. Internally every abscissa carries its distance to `x_max`
//! ([`Abscissa::gap`]), computed in closed form when `y` comes from `phi`,
//! and the arcsine/arccosine are rewritten as `atan2` of factored numerators.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Result};

/// Half-open interval margin applied by the checked entry points.
pub const DOMAIN_MARGIN: f64 = 1e-12;

/// Thickness `omega` with `lambda = tan(omega)` and the `y`-domain bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThicknessProfile {
    omega: f64,
    lambda: f64,
    x_max: f64,
    /// `1 + sqrt(1 + lambda^2)`; `x - x_other = x + this / lambda`.
    root_sum: f64,
    hyp: f64,
}

/// A point `x` of the `y`-domain together with `x_max - x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub gap: f64,
}

impl ThicknessProfile {
    /// Fails unless `omega` lies in `(0, pi/2)`, margin [`DOMAIN_MARGIN`].
    pub fn new(omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > DOMAIN_MARGIN && omega < FRAC_PI_2 - DOMAIN_MARGIN) {
            return Err(domain(format!("thickness {omega} must lie in (0, pi/2)")));
        }
        Ok(Self::build(omega, omega.tan()))
    }

    /// Profile for a given `lambda > 0`; `omega = atan(lambda)`.
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(domain(format!("lambda {lambda} must be positive and finite")));
        }
        Ok(Self::build(lambda.atan(), lambda))
    }

    fn build(omega: f64, lambda: f64) -> Self {
        let hyp = (1.0 + lambda * lambda).sqrt();
        let root_sum = 1.0 + hyp;
        ThicknessProfile {
            omega,
            lambda,
            x_max: lambda / root_sum,
            root_sum,
            hyp,
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Upper end of the `y`-domain, `tan(omega / 2)`.
    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn upper_endpoint(&self) -> Abscissa {
        Abscissa {
            x: self.x_max,
            gap: 0.0,
        }
    }

    /// Checked abscissa for `x` in `(0, x_max)`.
    pub fn abscissa(&self, x: f64) -> Result<Abscissa> {
        if !(x.is_finite() && x > DOMAIN_MARGIN && x < self.x_max - DOMAIN_MARGIN) {
            return Err(domain(format!("x = {x} outside (0, {})", self.x_max)));
        }
        Ok(Abscissa { x, gap: self.x_max - x })
    }

    fn check_phi(phi: f64) -> Result<()> {
        if !(phi.is_finite() && phi > DOMAIN_MARGIN && phi < FRAC_PI_2 - DOMAIN_MARGIN) {
            return Err(domain(format!("phi = {phi} outside (0, pi/2)")));
        }
        Ok(())
    }

    /// `y = tan(b)` for crossing angle `phi`, with its gap to `x_max`. Unchecked.
    pub fn abscissa_of_phi(&self, phi: f64) -> Abscissa {
        let lam = self.lambda;
        let c = phi.cos();
        let r = ((1.0 + c) * (1.0 + c) + 4.0 * lam * lam * c).sqrt();
        // rationalized root of lambda y^2 + (1 + c) y - lambda c = 0
        let y = 2.0 * lam * c / ((1.0 + c) + r);
        let half = (0.5 * phi).sin();
        let gap = 2.0 * half * half * (lam - y) / (lam * (self.x_max + y) + 2.0);
        Abscissa { x: y, gap }
    }

    /// `lambda * sqrt((x_max - x)(x - x_other))`, the factored `sqrt(lambda (lambda - 2x - lambda x^2))`.
    fn radical(&self, a: Abscissa) -> f64 {
        let spread = a.x + self.root_sum / self.lambda;
        self.lambda * (a.gap.max(0.0) * spread).sqrt()
    }

    /// `alpha` at an abscissa, valid on the closed domain `[0, x_max]`.
    pub fn alpha_at(&self, a: Abscissa) -> f64 {
        (a.x * self.hyp).atan2(self.radical(a))
    }

    /// `pi/2 - alpha` at an abscissa, valid on `[0, x_max]`.
    pub fn alpha_complement_at(&self, a: Abscissa) -> f64 {
        self.radical(a).atan2(a.x * self.hyp)
    }

    /// `phi` at an abscissa, valid on `[0, x_max]`.
    pub fn phi_at(&self, a: Abscissa) -> f64 {
        let s = self.radical(a) * (1.0 + a.x * a.x).sqrt();
        s.atan2(a.x * (1.0 + self.lambda * a.x))
    }

    /// `g`: tangent of the short leg, from the crossing angle.
    pub fn tan_leg(&self, phi: f64) -> Result<f64> {
        Self::check_phi(phi)?;
        Ok(self.abscissa_of_phi(phi).x)
    }

    /// `f`: apex angle `alpha` from `y = tan(b)`.
    pub fn alpha(&self, x: f64) -> Result<f64> {
        Ok(self.alpha_at(self.abscissa(x)?))
    }

    /// `f1 = pi/2 - f`.
    pub fn alpha_complement(&self, x: f64) -> Result<f64> {
        Ok(self.alpha_complement_at(self.abscissa(x)?))
    }

    /// `f2`: crossing angle `phi` from `y = tan(b)`.
    pub fn phi_of(&self, x: f64) -> Result<f64> {
        Ok(self.phi_at(self.abscissa(x)?))
    }

    /// `F = f o g`: apex angle as a function of the crossing angle.
    pub fn alpha_of_phi(&self, phi: f64) -> Result<f64> {
        Self::check_phi(phi)?;
        Ok(self.alpha_at(self.abscissa_of_phi(phi)))
    }

    /// `pi/2 - F(phi)`, without the cancellation of subtracting from `pi/2`.
    pub fn alpha_complement_of_phi(&self, phi: f64) -> Result<f64> {
        Self::check_phi(phi)?;
        Ok(self.alpha_complement_at(self.abscissa_of_phi(phi)))
    }

    /// Closed-form derivative of [`alpha_of_phi`](Self::alpha_of_phi):
    ///
    /// `F'(x) = -lambda sqrt(2 + 2 lambda^2) sin x / (r sqrt(1 - cos x) sqrt(1 + 2 lambda^2 + cos x - r))`
    /// with `r = sqrt((1 + cos x)^2 + 4 lambda^2 cos x)`.
    pub fn alpha_of_phi_derivative(&self, phi: f64) -> Result<f64> {
        Self::check_phi(phi)?;
        let lam = self.lambda;
        let c = phi.cos();
        let r = ((1.0 + c) * (1.0 + c) + 4.0 * lam * lam * c).sqrt();
        let one_minus_cos = 2.0 * (0.5 * phi).sin().powi(2);
        let num = -lam * (2.0 + 2.0 * lam * lam).sqrt() * phi.sin();
        let den = r * one_minus_cos.sqrt() * (1.0 + 2.0 * lam * lam + c - r).sqrt();
        Ok(num / den)
    }

    /// Ratio `f1(y) / f2(y)` at `y = g(phi)`.
    pub fn complement_ratio_of_phi(&self, phi: f64) -> f64 {
        let a = self.abscissa_of_phi(phi);
        self.alpha_complement_at(a) / self.phi_at(a)
    }

    /// Ratio `f1(x) / f2(x)`.
    pub fn complement_ratio(&self, x: f64) -> Result<f64> {
        let a = self.abscissa(x)?;
        Ok(self.alpha_complement_at(a) / self.phi_at(a))
    }

    /// Limit of the complement ratio as `x -> x_max`:
    /// `sqrt((sqrt(1+lambda^2) + 1) / (2 sqrt(1+lambda^2))) = cos(omega/2)`.
    pub fn complement_ratio_limit(&self) -> f64 {
        ((self.hyp + 1.0) / (2.0 * self.hyp)).sqrt()
    }
}
