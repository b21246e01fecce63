//! Damped minimal-norm Gauss-Newton for underdetermined residual systems.

use nalgebra::{DMatrix, DVector};

use crate::error::{ReducedError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Stop when `max |r_i|` falls below this.
    pub residual_tol: f64,
    pub max_iterations: usize,
    /// Initial Levenberg-Marquardt damping.
    pub damping: f64,
    /// Central-difference step.
    pub jacobian_step: f64,
    /// Extra steps taken after convergence while they still reduce the residual.
    pub polish_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            residual_tol: 1e-10,
            max_iterations: 100,
            damping: 1e-3,
            jacobian_step: 1e-6,
            polish_steps: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    pub max_residual: f64,
    pub iterations: usize,
}

fn max_abs(r: &DVector<f64>) -> f64 {
    r.iter()
        .fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v.abs()) })
}

fn jacobian<F>(f: &F, x: &DVector<f64>, m: usize, h: f64) -> Option<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Option<Vec<f64>>,
{
    let mut jac = DMatrix::zeros(m, x.len());
    let mut probe = x.clone();
    for col in 0..x.len() {
        probe[col] = x[col] + h;
        let plus = f(probe.as_slice())?;
        probe[col] = x[col] - h;
        let minus = f(probe.as_slice())?;
        probe[col] = x[col];
        for row in 0..m {
            jac[(row, col)] = (plus[row] - minus[row]) / (2.0 * h);
        }
    }
    Some(jac)
}

/// Drives `f(x) = 0` from `x0` with steps `dx = -J^T (J J^T + mu I)^{-1} r`.
///
/// `f` returns `None` where the residuals are undefined; such trial points
/// are treated as rejected steps.
pub fn solve<F>(f: F, x0: &[f64], opts: &SolverOptions) -> Result<Solution>
where
    F: Fn(&[f64]) -> Option<Vec<f64>>,
{
    let x = DVector::from_column_slice(x0);
    let r = DVector::from_vec(f(x.as_slice()).ok_or(ReducedError::SolverDiverged {
        iterations: 0,
        residual: f64::NAN,
    })?);
    let mut state = State {
        worst: max_abs(&r),
        x,
        r,
        mu: opts.damping,
    };

    let mut iterations = 0;
    while state.worst >= opts.residual_tol {
        if iterations == opts.max_iterations || !state.step(&f, opts) {
            return Err(ReducedError::SolverDiverged {
                iterations: iterations.max(1),
                residual: state.worst,
            });
        }
        iterations += 1;
    }
    // derived quantities amplify the residual, so squeeze out what is cheap
    if iterations > 0 {
        for _ in 0..opts.polish_steps {
            let before = state.worst;
            if !state.step(&f, opts) || state.worst > 0.5 * before {
                break;
            }
        }
    }
    Ok(Solution {
        x: state.x.data.into(),
        max_residual: state.worst,
        iterations,
    })
}

struct State {
    x: DVector<f64>,
    r: DVector<f64>,
    worst: f64,
    mu: f64,
}

impl State {
    /// One damped step; `false` if no damping level reduces `|r|`.
    fn step<F>(&mut self, f: &F, opts: &SolverOptions) -> bool
    where
        F: Fn(&[f64]) -> Option<Vec<f64>>,
    {
        let m = self.r.len();
        let Some(jac) = jacobian(f, &self.x, m, opts.jacobian_step) else {
            return false;
        };
        let jjt = &jac * jac.transpose();
        let norm = self.r.norm();
        while self.mu < 1e12 {
            let system = &jjt + DMatrix::identity(m, m) * self.mu;
            if let Some(chol) = system.cholesky() {
                let trial = &self.x - jac.transpose() * chol.solve(&self.r);
                if let Some(rt) = f(trial.as_slice()) {
                    let rt = DVector::from_vec(rt);
                    if rt.norm() < norm {
                        self.x = trial;
                        self.worst = max_abs(&rt);
                        self.r = rt;
                        self.mu = (self.mu / 10.0).max(1e-15);
                        return true;
                    }
                }
            }
            self.mu *= 10.0;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projects_onto_circle_with_minimal_norm() {
        // x^2 + y^2 = 1 from (2, 0): the nearest solution is (1, 0)
        let f = |x: &[f64]| Some(vec![x[0] * x[0] + x[1] * x[1] - 1.0]);
        let s = solve(f, &[2.0, 0.0], &SolverOptions::default()).unwrap();
        assert!((s.x[0] - 1.0).abs() < 1e-9 && s.x[1].abs() < 1e-12);
        assert!(s.max_residual < 1e-10);
    }

    #[test]
    fn already_solved_takes_no_steps() {
        let f = |x: &[f64]| Some(vec![x[0] - 3.0]);
        let s = solve(f, &[3.0, 7.0], &SolverOptions::default()).unwrap();
        assert_eq!(s.iterations, 0);
        assert_eq!(s.x, vec![3.0, 7.0]);
    }

    #[test]
    fn inconsistent_system_diverges() {
        let f = |x: &[f64]| Some(vec![x[0] * x[0] + 1.0]);
        assert!(matches!(
            solve(f, &[0.5], &SolverOptions::default()),
            Err(ReducedError::SolverDiverged { .. })
        ));
    }
}
