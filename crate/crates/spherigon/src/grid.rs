//! Sweep grids for the verification suites.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Smallest thickness accepted on a grid.
pub const OMEGA_MIN: f64 = 0.01;
/// Largest thickness accepted on a grid. Values closer to `pi/2` make the
/// regular polygons nearly hemispherical and the oracles ill-conditioned.
pub const OMEGA_MAX: f64 = 1.5;
pub const N_MAX: usize = 2001;
pub const MC_MIN: u64 = 1_000;
pub const MC_MAX: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepGrid {
    /// `lambda = tan(omega)`; each value contributes `omega = atan(lambda)`.
    pub lambda_values: Vec<f64>,
    pub n_values: Vec<usize>,
    pub omega_values: Vec<f64>,
    pub seeds: Vec<u64>,
    pub mc_samples: u64,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            lambda_values: vec![0.25, 1.0, 4.0],
            n_values: vec![3, 5, 7, 9, 101],
            omega_values: vec![0.2, 0.8, 1.4],
            seeds: vec![1, 2, 3],
            mc_samples: 100_000,
        }
    }
}

fn grid_err(msg: impl Into<String>) -> CliError {
    CliError::Grid(msg.into())
}

impl SweepGrid {
    pub fn from_json(text: &str) -> Result<Self> {
        let grid: SweepGrid = serde_json::from_str(text).map_err(|e| grid_err(e.to_string()))?;
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(grid_err("n_values is empty"));
        }
        if self.seeds.is_empty() {
            return Err(grid_err("seeds is empty"));
        }
        if self.lambda_values.is_empty() && self.omega_values.is_empty() {
            return Err(grid_err(
                "no thickness values (lambda_values and omega_values both empty)",
            ));
        }
        for &n in &self.n_values {
            if n < 3 || n % 2 == 0 || n > N_MAX {
                return Err(grid_err(format!("n = {n} must be odd and in [3, {N_MAX}]")));
            }
        }
        for &lam in &self.lambda_values {
            if !(lam.is_finite() && lam > 0.0) {
                return Err(grid_err(format!("lambda = {lam} must be positive")));
            }
            check_omega(lam.atan()).map_err(|e| grid_err(format!("lambda = {lam}: {e}")))?;
        }
        for &omega in &self.omega_values {
            check_omega(omega).map_err(grid_err)?;
        }
        if !(MC_MIN..=MC_MAX).contains(&self.mc_samples) {
            return Err(grid_err(format!(
                "mc_samples = {} must lie in [{MC_MIN}, {MC_MAX}]",
                self.mc_samples
            )));
        }
        Ok(())
    }

    /// All thickness values, sorted, with near-duplicates removed.
    pub fn thicknesses(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .lambda_values
            .iter()
            .map(|l| l.atan())
            .chain(self.omega_values.iter().copied())
            .collect();
        all.sort_by(f64::total_cmp);
        all.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        all
    }

    pub fn sorted_n_values(&self) -> Vec<usize> {
        let mut ns = self.n_values.clone();
        ns.sort_unstable();
        ns.dedup();
        ns
    }
}

fn check_omega(omega: f64) -> std::result::Result<(), String> {
    if omega.is_finite() && (OMEGA_MIN..=OMEGA_MAX).contains(&omega) {
        Ok(())
    } else {
        Err(format!("thickness {omega} outside [{OMEGA_MIN}, {OMEGA_MAX}]"))
    }
}

/// Parses a comma-separated list such as `3,5,7`.
pub fn parse_list<T: FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| grid_err(format!("{s:?}: {e}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let g = SweepGrid::default();
        g.validate().unwrap();
        assert_eq!(g.thicknesses().len(), 6);
    }

    #[test]
    fn near_right_angle_rejected() {
        let g = SweepGrid {
            omega_values: vec![1.57],
            ..SweepGrid::default()
        };
        assert!(matches!(g.validate(), Err(CliError::Grid(_))));
        let g = SweepGrid {
            lambda_values: vec![1e6],
            ..SweepGrid::default()
        };
        assert!(g.validate().is_err());
    }

    #[test]
    fn bad_values_rejected() {
        for g in [
            SweepGrid {
                n_values: vec![4],
                ..SweepGrid::default()
            },
            SweepGrid {
                n_values: vec![1],
                ..SweepGrid::default()
            },
            SweepGrid {
                n_values: vec![],
                ..SweepGrid::default()
            },
            SweepGrid {
                seeds: vec![],
                ..SweepGrid::default()
            },
            SweepGrid {
                lambda_values: vec![-1.0],
                ..SweepGrid::default()
            },
            SweepGrid {
                omega_values: vec![f64::NAN],
                ..SweepGrid::default()
            },
            SweepGrid {
                mc_samples: 0,
                ..SweepGrid::default()
            },
            SweepGrid {
                lambda_values: vec![],
                omega_values: vec![],
                ..SweepGrid::default()
            },
        ] {
            assert!(g.validate().is_err(), "{g:?}");
        }
    }

    #[test]
    fn json_round_trip_and_defaults() {
        let g = SweepGrid::from_json(r#"{"n_values":[5,7],"seeds":[9]}"#).unwrap();
        assert_eq!(g.n_values, vec![5, 7]);
        assert_eq!(g.lambda_values, SweepGrid::default().lambda_values);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(SweepGrid::from_json(&text).unwrap(), g);
        assert!(SweepGrid::from_json(r#"{"n":[5]}"#).is_err());
        assert!(SweepGrid::from_json("[").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<usize>("3, 5,7,").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_list::<f64>("0.25,1").unwrap(), vec![0.25, 1.0]);
        assert!(parse_list::<usize>("3,x").is_err());
        assert!(parse_list::<u64>("").unwrap().is_empty());
    }
}
