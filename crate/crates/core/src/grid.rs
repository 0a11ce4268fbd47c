//! Periodic grids and physical parameters.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Physical parameters. Everything runs in dimensionless units; `hbar` is the
/// universal action parameter and defaults to 1.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicsParams {
    pub hbar: f64,
    pub mass: f64,
    pub charge: f64,
    pub g_factor: f64,
    pub light_speed: f64,
}

impl Default for PhysicsParams {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            charge: 1.0,
            g_factor: 2.0,
            light_speed: 1.0,
        }
    }
}

impl PhysicsParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0) {
            return Err(Error::Spec(format!("hbar must be > 0, got {}", self.hbar)));
        }
        if !(self.mass > 0.0) {
            return Err(Error::Spec(format!("mass must be > 0, got {}", self.mass)));
        }
        Ok(())
    }

    /// Magnetic-moment scale g·e/(2mc) · ħ/2.
    pub fn moment_scale(&self) -> f64 {
        self.g_factor * self.charge / (2.0 * self.mass * self.light_speed) * self.hbar / 2.0
    }
}

/// Uniform periodic 1-D grid. Points are origin + j·spacing for j in 0..n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid1D {
    pub n_points: usize,
    pub length: f64,
    pub origin: f64,
}

impl Grid1D {
    pub fn new(n_points: usize, length: f64, origin: f64) -> Result<Self> {
        if n_points < 8 || !n_points.is_power_of_two() {
            return Err(Error::Spec(format!(
                "n_points must be a power of two >= 8, got {n_points}"
            )));
        }
        if !(length > 0.0) {
            return Err(Error::Spec(format!("length must be > 0, got {length}")));
        }
        Ok(Self {
            n_points,
            length,
            origin,
        })
    }

    /// Grid of length `length` centered on zero.
    pub fn centered(n_points: usize, length: f64) -> Result<Self> {
        Self::new(n_points, length, -length / 2.0)
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n_points as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        self.origin + j as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.point(j)).collect()
    }

    /// Index of the grid point closest to `x` (periodic wrap).
    pub fn nearest_index(&self, x: f64) -> usize {
        let rel = (x - self.origin) / self.spacing();
        let j = rel.round() as i64;
        j.rem_euclid(self.n_points as i64) as usize
    }

    /// The momentum grid that makes the transform between this axis and its
    /// conjugate exact: n points, spacing 2πħ/length, centered on zero.
    pub fn dual_momentum(&self, hbar: f64) -> Grid1D {
        let dp = 2.0 * std::f64::consts::PI * hbar / self.length;
        let lp = dp * self.n_points as f64;
        Grid1D {
            n_points: self.n_points,
            length: lp,
            origin: -lp / 2.0,
        }
    }

    pub fn max_abs_coordinate(&self) -> f64 {
        let last = self.origin + (self.n_points - 1) as f64 * self.spacing();
        self.origin.abs().max(last.abs())
    }
}

/// Product grid for phase-space distributions F(x, p).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseSpaceGrid {
    pub x_axis: Grid1D,
    pub p_axis: Grid1D,
}

impl PhaseSpaceGrid {
    /// Validates the duality bound p_max · Δx ≤ π·ħ.
    pub fn new(x_axis: Grid1D, p_axis: Grid1D, hbar: f64) -> Result<Self> {
        let bound = std::f64::consts::PI * hbar;
        let p_max = p_axis.max_abs_coordinate();
        if p_max * x_axis.spacing() > bound * (1.0 + 1e-12) {
            return Err(Error::GridResolution(format!(
                "p_max·Δx = {} exceeds π·ħ = {}",
                p_max * x_axis.spacing(),
                bound
            )));
        }
        Ok(Self { x_axis, p_axis })
    }

    /// Exactly dual grid: p axis with spacing 2πħ/L_x, n_p = n_x.
    pub fn dual(x_axis: Grid1D, hbar: f64) -> Self {
        Self {
            x_axis,
            p_axis: x_axis.dual_momentum(hbar),
        }
    }

    /// True when the p axis is the exact dual of the x axis, which is what the
    /// transform needs to be a plain DFT.
    pub fn is_exactly_dual(&self, hbar: f64) -> bool {
        let dual = self.x_axis.dual_momentum(hbar);
        self.p_axis.n_points == dual.n_points
            && (self.p_axis.length - dual.length).abs() <= 1e-12 * dual.length
            && (self.p_axis.origin - dual.origin).abs() <= 1e-12 * dual.length
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid1D::new(7, 1.0, 0.0).is_err());
        assert!(Grid1D::new(48, 1.0, 0.0).is_err());
        assert!(Grid1D::new(8, -1.0, 0.0).is_err());
        assert!(Grid1D::new(8, 1.0, 0.0).is_ok());
    }

    #[test]
    fn dual_grid_saturates_duality_bound() {
        let x = Grid1D::centered(256, 32.0).unwrap();
        for hbar in [1.0, 0.5, 2.0] {
            let g = PhaseSpaceGrid::dual(x, hbar);
            let p_max = g.p_axis.max_abs_coordinate();
            let bound = std::f64::consts::PI * hbar;
            assert!(p_max * x.spacing() <= bound * (1.0 + 1e-12));
            assert!((p_max * x.spacing() - bound).abs() < 1e-10 * bound);
            assert!(g.is_exactly_dual(hbar));
            assert!(PhaseSpaceGrid::new(g.x_axis, g.p_axis, hbar).is_ok());
        }
    }

    #[test]
    fn dual_momentum_contains_zero() {
        let x = Grid1D::centered(64, 20.0).unwrap();
        let p = x.dual_momentum(1.0);
        assert!((p.point(32)).abs() < 1e-14);
    }
}
