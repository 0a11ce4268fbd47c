//! External potentials and their sampled forms.

use crate::error::{Error, Result};
use crate::fft::{self, FftPlan};
use crate::grid::{Grid1D, PhysicsParams};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Potential specification. Analytic kinds evaluate in closed form at any
/// coordinate; `Tabulated` lives on a specific grid and wraps periodically.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Free,
    Harmonic { omega: f64 },
    Linear { f0: f64 },
    Quartic { lambda: f64 },
    DoubleGaussianBarrier {
        height: f64,
        width: f64,
        separation: f64,
        center: f64,
    },
    Tabulated { values: Vec<f64> },
}

impl PotentialSpec {
    /// Closed-form value at an arbitrary coordinate (analytic kinds only).
    fn eval_analytic(&self, x: f64, params: &PhysicsParams) -> f64 {
        match self {
            PotentialSpec::Free => 0.0,
            PotentialSpec::Harmonic { omega } => 0.5 * params.mass * omega * omega * x * x,
            PotentialSpec::Linear { f0 } => f0 * x,
            PotentialSpec::Quartic { lambda } => lambda * x.powi(4),
            PotentialSpec::DoubleGaussianBarrier {
                height,
                width,
                separation,
                center,
            } => {
                let g = |c: f64| (-((x - c) * (x - c)) / (2.0 * width * width)).exp();
                height * (g(center - separation / 2.0) + g(center + separation / 2.0))
            }
            PotentialSpec::Tabulated { .. } => unreachable!("tabulated handled by caller"),
        }
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self, PotentialSpec::Tabulated { .. })
    }

    /// Pointwise samples on the grid.
    pub fn sample(&self, grid: &Grid1D, params: &PhysicsParams) -> Result<Vec<f64>> {
        match self {
            PotentialSpec::Tabulated { values } => {
                if values.len() != grid.n_points {
                    return Err(Error::Spec(format!(
                        "tabulated potential has {} samples, grid has {}",
                        values.len(),
                        grid.n_points
                    )));
                }
                Ok(values.clone())
            }
            _ => Ok(grid
                .points()
                .iter()
                .map(|&x| self.eval_analytic(x, params))
                .collect()),
        }
    }

    /// Samples of V(x + shift). Analytic kinds evaluate the closed form;
    /// tabulated data is shifted spectrally (periodic).
    pub fn sample_shifted(
        &self,
        grid: &Grid1D,
        shift: f64,
        params: &PhysicsParams,
    ) -> Result<Vec<f64>> {
        match self {
            PotentialSpec::Tabulated { values } => {
                if values.len() != grid.n_points {
                    return Err(Error::Spec(format!(
                        "tabulated potential has {} samples, grid has {}",
                        values.len(),
                        grid.n_points
                    )));
                }
                let plan = FftPlan::new(grid.n_points);
                let cvals: Vec<Complex64> =
                    values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                let mult = fft::shift_multiplier(grid.n_points, grid.length, shift);
                Ok(fft::shifted_samples(&plan, &cvals, &mult)
                    .iter()
                    .map(|c| c.re)
                    .collect())
            }
            _ => Ok(grid
                .points()
                .iter()
                .map(|&x| self.eval_analytic(x + shift, params))
                .collect()),
        }
    }

    /// Force samples f = -dV/dx on the grid. Analytic kinds use the exact
    /// derivative; tabulated data is differentiated spectrally.
    pub fn force(&self, grid: &Grid1D, params: &PhysicsParams) -> Result<Vec<f64>> {
        match self {
            PotentialSpec::Free => Ok(vec![0.0; grid.n_points]),
            PotentialSpec::Harmonic { omega } => Ok(grid
                .points()
                .iter()
                .map(|&x| -params.mass * omega * omega * x)
                .collect()),
            PotentialSpec::Linear { f0 } => Ok(vec![-f0; grid.n_points]),
            PotentialSpec::Quartic { lambda } => Ok(grid
                .points()
                .iter()
                .map(|&x| -4.0 * lambda * x.powi(3))
                .collect()),
            PotentialSpec::DoubleGaussianBarrier {
                height,
                width,
                separation,
                center,
            } => Ok(grid
                .points()
                .iter()
                .map(|&x| {
                    let dg = |c: f64| {
                        let u = x - c;
                        -u / (width * width) * (-u * u / (2.0 * width * width)).exp()
                    };
                    -height * (dg(center - separation / 2.0) + dg(center + separation / 2.0))
                })
                .collect()),
            PotentialSpec::Tabulated { values } => {
                if values.len() != grid.n_points {
                    return Err(Error::Spec(format!(
                        "tabulated potential has {} samples, grid has {}",
                        values.len(),
                        grid.n_points
                    )));
                }
                let plan = FftPlan::new(grid.n_points);
                let cvals: Vec<Complex64> =
                    values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                let dv = fft::spectral_derivative(&plan, &cvals, grid.length, 1);
                Ok(dv.iter().map(|c| -c.re).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_closed_form() {
        let params = PhysicsParams::default();
        let grid = Grid1D::centered(16, 8.0).unwrap();
        let spec = PotentialSpec::Harmonic { omega: 1.0 };
        let v = spec.sample(&grid, &params).unwrap();
        let j = grid.nearest_index(2.0);
        assert!((grid.point(j) - 2.0).abs() < 1e-12);
        assert!((v[j] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn free_is_zero_and_quartic_matches() {
        let params = PhysicsParams::default();
        let grid = Grid1D::centered(16, 8.0).unwrap();
        assert!(PotentialSpec::Free
            .sample(&grid, &params)
            .unwrap()
            .iter()
            .all(|&v| v == 0.0));
        let v = PotentialSpec::Quartic { lambda: 0.3 }.sample(&grid, &params).unwrap();
        for (j, &x) in grid.points().iter().enumerate() {
            assert!((v[j] - 0.3 * x.powi(4)).abs() < 1e-12);
        }
    }

    #[test]
    fn tabulated_length_mismatch_errors() {
        let params = PhysicsParams::default();
        let grid = Grid1D::centered(16, 8.0).unwrap();
        let spec = PotentialSpec::Tabulated { values: vec![0.0; 8] };
        assert!(matches!(spec.sample(&grid, &params), Err(Error::Spec(_))));
    }
}
