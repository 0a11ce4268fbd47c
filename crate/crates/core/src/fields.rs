//! Field types: phase-space distributions, density functions in the (x, δx)
//! chart, and probability amplitudes.

use crate::error::{Error, Result};
use crate::fft::{self, FftPlan};
use crate::grid::{Grid1D, PhaseSpaceGrid, PhysicsParams};
use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// Real-valued distribution F(x, p; t) on a periodic phase-space grid.
///
/// `diagnostic` marks fields reconstructed by the inverse transform, which may
/// be genuinely negative and sit outside the probability-density invariants.
#[derive(Debug, Clone)]
pub struct PhaseSpaceField {
    pub grid: PhaseSpaceGrid,
    /// Indexed [x, p].
    pub values: Array2<f64>,
    pub time: f64,
    pub diagnostic: bool,
}

impl PhaseSpaceField {
    /// Builds a normalized probability density. Values must be nonnegative.
    pub fn new_normalized(grid: PhaseSpaceGrid, mut values: Array2<f64>, time: f64) -> Result<Self> {
        if values.shape() != [grid.x_axis.n_points, grid.p_axis.n_points] {
            return Err(Error::GridMismatch(format!(
                "field shape {:?} does not match grid ({}, {})",
                values.shape(),
                grid.x_axis.n_points,
                grid.p_axis.n_points
            )));
        }
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < 0.0 {
            return Err(Error::Spec(format!(
                "phase-space density must be nonnegative at construction, min = {min}"
            )));
        }
        let measure = grid.x_axis.spacing() * grid.p_axis.spacing();
        let total: f64 = values.iter().sum::<f64>() * measure;
        if !(total > 0.0) {
            return Err(Error::Spec("cannot normalize an all-zero field".into()));
        }
        values.mapv_inplace(|v| v / total);
        Ok(Self {
            grid,
            values,
            time,
            diagnostic: false,
        })
    }

    /// Wraps raw values without the construction invariants. Used by the
    /// evolution steppers and the diagnostic inverse transform.
    pub(crate) fn from_raw(grid: PhaseSpaceGrid, values: Array2<f64>, time: f64, diagnostic: bool) -> Self {
        Self {
            grid,
            values,
            time,
            diagnostic,
        }
    }

    pub fn measure(&self) -> f64 {
        self.grid.x_axis.spacing() * self.grid.p_axis.spacing()
    }

    /// ∬ F dx dp.
    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.measure()
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Post-evolution sanity: mass within 1e-8, overshoot above the -1e-6 floor.
    pub fn check_evolved(&self) -> Result<()> {
        let mass = self.total_mass();
        if (mass - 1.0).abs() > 1e-8 {
            return Err(Error::Spec(format!("mass drifted to {mass}")));
        }
        let min = self.min_value();
        if min < -1e-6 {
            return Err(Error::Spec(format!(
                "negative overshoot {min} below the -1e-6 floor"
            )));
        }
        Ok(())
    }

    pub fn mean_x(&self) -> f64 {
        let xs = self.grid.x_axis.points();
        let mut m = 0.0;
        for (i, row) in self.values.rows().into_iter().enumerate() {
            m += xs[i] * row.sum();
        }
        m * self.measure() / self.total_mass()
    }

    pub fn mean_p(&self) -> f64 {
        let ps = self.grid.p_axis.points();
        let mut m = 0.0;
        for row in self.values.rows() {
            for (j, v) in row.iter().enumerate() {
                m += ps[j] * v;
            }
        }
        m * self.measure() / self.total_mass()
    }

    pub fn std_x(&self) -> f64 {
        let mu = self.mean_x();
        let xs = self.grid.x_axis.points();
        let mut m = 0.0;
        for (i, row) in self.values.rows().into_iter().enumerate() {
            m += (xs[i] - mu) * (xs[i] - mu) * row.sum();
        }
        (m * self.measure() / self.total_mass()).sqrt()
    }

    pub fn std_p(&self) -> f64 {
        let mu = self.mean_p();
        let ps = self.grid.p_axis.points();
        let mut m = 0.0;
        for row in self.values.rows() {
            for (j, v) in row.iter().enumerate() {
                m += (ps[j] - mu) * (ps[j] - mu) * v;
            }
        }
        (m * self.measure() / self.total_mass()).sqrt()
    }

    /// ∬ f(x,p) F dx dp for a polynomial weight, by direct quadrature.
    pub fn weighted_moment(&self, x_pow: u32, p_pow: u32) -> f64 {
        let xs = self.grid.x_axis.points();
        let ps = self.grid.p_axis.points();
        let mut m = 0.0;
        for (i, row) in self.values.rows().into_iter().enumerate() {
            let xw = xs[i].powi(x_pow as i32);
            for (j, v) in row.iter().enumerate() {
                m += xw * ps[j].powi(p_pow as i32) * v;
            }
        }
        m * self.measure()
    }

    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() * self.measure()).sqrt()
    }

    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("phase-space grids differ".into()));
        }
        let d = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            * self.measure();
        Ok(d.sqrt())
    }
}

/// Gaussian product density centered at (x0, p0), normalized on the grid.
pub fn make_gaussian_phase_space(
    grid: &PhaseSpaceGrid,
    x0: f64,
    p0: f64,
    sigma_x: f64,
    sigma_p: f64,
) -> Result<PhaseSpaceField> {
    let dx = grid.x_axis.spacing();
    let dp = grid.p_axis.spacing();
    if sigma_x < 2.0 * dx {
        return Err(Error::GridResolution(format!(
            "sigma_x = {sigma_x} below the 2Δx = {} floor",
            2.0 * dx
        )));
    }
    if sigma_p < 2.0 * dp {
        return Err(Error::GridResolution(format!(
            "sigma_p = {sigma_p} below the 2Δp = {} floor",
            2.0 * dp
        )));
    }
    let xs = grid.x_axis.points();
    let ps = grid.p_axis.points();
    let mut values = Array2::zeros((xs.len(), ps.len()));
    for (i, &x) in xs.iter().enumerate() {
        let gx = (-((x - x0) * (x - x0)) / (2.0 * sigma_x * sigma_x)).exp();
        for (j, &p) in ps.iter().enumerate() {
            let gp = (-((p - p0) * (p - p0)) / (2.0 * sigma_p * sigma_p)).exp();
            values[[i, j]] = gx * gp;
        }
    }
    PhaseSpaceField::new_normalized(*grid, values, 0.0)
}

/// Complex density function ρ stored in the (x, δx) chart:
/// `values[[i, k]]` = ρ(x_i + δ_k/2, x_i - δ_k/2), with the δ axis centered on
/// zero (index n/2 is the diagonal).
#[derive(Debug, Clone)]
pub struct DensityField {
    pub grid_y: Grid1D,
    pub grid_dy: Grid1D,
    /// Indexed [x, δx].
    pub values: Array2<Complex64>,
    pub time: f64,
}

impl DensityField {
    pub fn new(grid_y: Grid1D, grid_dy: Grid1D, values: Array2<Complex64>, time: f64) -> Result<Self> {
        if values.shape() != [grid_y.n_points, grid_dy.n_points] {
            return Err(Error::GridMismatch(format!(
                "density shape {:?} does not match grids ({}, {})",
                values.shape(),
                grid_y.n_points,
                grid_dy.n_points
            )));
        }
        Ok(Self {
            grid_y,
            grid_dy,
            values,
            time,
        })
    }

    /// Index of the δx = 0 column.
    pub fn diagonal_index(&self) -> usize {
        self.grid_dy.nearest_index(0.0)
    }

    /// Real diagonal ρ(x, x), the configuration-space probability density.
    pub fn diagonal(&self) -> Array1<f64> {
        let k0 = self.diagonal_index();
        Array1::from_iter(self.values.column(k0).iter().map(|c| c.re))
    }

    /// ∫ ρ(x, x) dx.
    pub fn trace(&self) -> f64 {
        self.diagonal().sum() * self.grid_y.spacing()
    }

    /// Max pairing defect |ρ(x, -δ) - conj(ρ(x, δ))| over the grid. The most
    /// negative δ column pairs with itself under periodic wrap, so its
    /// imaginary part counts double.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.grid_dy.n_points;
        let mut worst: f64 = 0.0;
        for row in self.values.rows() {
            for k in 0..n {
                // with the δ axis centered, -δ_k lives at index n - k (k = 0
                // is self-paired through the periodic wrap).
                let kneg = if k == 0 { 0 } else { n - k };
                let d = (row[kneg] - row[k].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Trace = 1 within 1e-8, Hermiticity within 1e-9 of the field scale,
    /// diagonal real and above the -1e-9 floor.
    pub fn validate(&self) -> Result<()> {
        let tr = self.trace();
        if (tr - 1.0).abs() > 1e-8 {
            return Err(Error::DensityFormat(format!("trace = {tr}")));
        }
        let scale = self.max_abs().max(1e-300);
        if self.hermiticity_error() > 1e-9 * scale.max(1.0) {
            return Err(Error::DensityFormat(format!(
                "hermiticity defect {} exceeds tolerance",
                self.hermiticity_error()
            )));
        }
        let k0 = self.diagonal_index();
        for row in self.values.rows() {
            if row[k0].re < -1e-9 {
                return Err(Error::DensityFormat(format!(
                    "diagonal dips to {}",
                    row[k0].re
                )));
            }
        }
        Ok(())
    }

    pub fn measure(&self) -> f64 {
        self.grid_y.spacing() * self.grid_dy.spacing()
    }

    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|c| c.norm_sqr()).sum::<f64>() * self.measure()).sqrt()
    }

    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        if self.grid_y != other.grid_y || self.grid_dy != other.grid_dy {
            return Err(Error::GridMismatch("density grids differ".into()));
        }
        let d = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            * self.measure();
        Ok(d.sqrt())
    }
}

/// Complex probability amplitude ψ(x; t), kept L²-normalized.
#[derive(Debug, Clone)]
pub struct Amplitude {
    pub grid: Grid1D,
    pub values: Array1<Complex64>,
    pub time: f64,
}

impl Amplitude {
    pub fn new_normalized(grid: Grid1D, mut values: Array1<Complex64>, time: f64) -> Result<Self> {
        if values.len() != grid.n_points {
            return Err(Error::GridMismatch(format!(
                "amplitude length {} does not match grid {}",
                values.len(),
                grid.n_points
            )));
        }
        let norm = (values.iter().map(|c| c.norm_sqr()).sum::<f64>() * grid.spacing()).sqrt();
        if !(norm > 0.0) {
            return Err(Error::Spec("cannot normalize the zero amplitude".into()));
        }
        values.mapv_inplace(|c| c / norm);
        Ok(Self { grid, values, time })
    }

    pub(crate) fn from_raw(grid: Grid1D, values: Array1<Complex64>, time: f64) -> Self {
        Self { grid, values, time }
    }

    /// L² norm (1 within round-off for normalized states).
    pub fn norm(&self) -> f64 {
        (self.values.iter().map(|c| c.norm_sqr()).sum::<f64>() * self.grid.spacing()).sqrt()
    }

    /// |ψ|² samples.
    pub fn density(&self) -> Array1<f64> {
        self.values.mapv(|c| c.norm_sqr())
    }

    pub fn mean_x(&self) -> f64 {
        let xs = self.grid.points();
        let d = self.density();
        let m: f64 = xs.iter().zip(d.iter()).map(|(&x, &p)| x * p).sum();
        m * self.grid.spacing()
    }

    pub fn var_x(&self) -> f64 {
        let mu = self.mean_x();
        let xs = self.grid.points();
        let d = self.density();
        let m: f64 = xs
            .iter()
            .zip(d.iter())
            .map(|(&x, &p)| (x - mu) * (x - mu) * p)
            .sum();
        m * self.grid.spacing()
    }

    /// Momentum moments ⟨p^k⟩ from the spectral density |ψ̂|².
    pub fn momentum_moment(&self, order: u32, hbar: f64) -> f64 {
        let n = self.grid.n_points;
        let plan = FftPlan::new(n);
        let mut buf = self.values.to_vec();
        plan.forward(&mut buf);
        let ks = fft::wavenumbers(n, self.grid.length);
        let total: f64 = buf.iter().map(|c| c.norm_sqr()).sum();
        let mut m = 0.0;
        for (j, c) in buf.iter().enumerate() {
            if order % 2 == 1 && j == n / 2 {
                continue;
            }
            m += (hbar * ks[j]).powi(order as i32) * c.norm_sqr();
        }
        m / total
    }

    pub fn mean_p(&self, hbar: f64) -> f64 {
        self.momentum_moment(1, hbar)
    }

    pub fn var_p(&self, hbar: f64) -> f64 {
        let mu = self.mean_p(hbar);
        self.momentum_moment(2, hbar) - mu * mu
    }

    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("amplitude grids differ".into()));
        }
        let d = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            * self.grid.spacing();
        Ok(d.sqrt())
    }
}

/// Normalized Gaussian packet exp(-(x-x0)²/4σ² + i p0 x / ħ).
pub fn make_gaussian_amplitude(
    grid: &Grid1D,
    x0: f64,
    p0: f64,
    sigma_x: f64,
    hbar: f64,
) -> Result<Amplitude> {
    let dx = grid.spacing();
    if sigma_x < 2.0 * dx {
        return Err(Error::GridResolution(format!(
            "sigma_x = {sigma_x} below the 2Δx = {} floor",
            2.0 * dx
        )));
    }
    let values = Array1::from_iter(grid.points().iter().map(|&x| {
        let env = (-((x - x0) * (x - x0)) / (4.0 * sigma_x * sigma_x)).exp();
        Complex64::from_polar(env, p0 * x / hbar)
    }));
    Amplitude::new_normalized(*grid, values, 0.0)
}

/// Madelung decomposition ψ = R·exp(iS/ħ) plus the derived velocity field.
#[derive(Debug, Clone)]
pub struct MadelungFields {
    pub r_field: Array1<f64>,
    pub s_field: Array1<f64>,
    /// (1/m) ∂S/∂x, zeroed inside the node mask.
    pub velocity: Array1<f64>,
    /// True where R is below the node threshold (plus a 3-point margin).
    pub node_mask: Array1<bool>,
}

/// Node threshold used for Madelung masking: 1e-6 of the field maximum.
pub fn node_epsilon(max_r: f64) -> f64 {
    1e-6 * max_r
}

/// Dilates a boolean mask by `margin` grid points on each side (periodic).
pub fn dilate_mask(mask: &Array1<bool>, margin: usize) -> Array1<bool> {
    let n = mask.len();
    let mut out = Array1::from_elem(n, false);
    for i in 0..n {
        if mask[i] {
            for d in 0..=margin {
                out[(i + d) % n] = true;
                out[(i + n - d % n) % n] = true;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::PhaseSpaceGrid;

    #[test]
    fn gaussian_phase_space_is_normalized_and_centered() {
        let x = Grid1D::centered(128, 24.0).unwrap();
        let grid = PhaseSpaceGrid::dual(x, 1.0);
        let f = make_gaussian_phase_space(&grid, 0.5, -0.25, 1.0, 0.5).unwrap();
        assert!((f.total_mass() - 1.0).abs() < 1e-12);
        assert!((f.mean_x() - 0.5).abs() < 1e-9);
        assert!((f.mean_p() + 0.25).abs() < 1e-9);
    }

    #[test]
    fn unresolvable_widths_error() {
        let x = Grid1D::centered(64, 16.0).unwrap();
        let grid = PhaseSpaceGrid::dual(x, 1.0);
        assert!(matches!(
            make_gaussian_phase_space(&grid, 0.0, 0.0, 0.1, 1.0),
            Err(Error::GridResolution(_))
        ));
    }

    #[test]
    fn gaussian_amplitude_norm_and_boost() {
        let grid = Grid1D::centered(256, 32.0).unwrap();
        let psi = make_gaussian_amplitude(&grid, 0.0, 2.0, 1.0, 1.0).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        assert!((psi.mean_p(1.0) - 2.0).abs() < 1e-9);
        assert!((psi.var_x() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn construction_is_deterministic() {
        let x = Grid1D::centered(64, 16.0).unwrap();
        let grid = PhaseSpaceGrid::dual(x, 1.0);
        let a = make_gaussian_phase_space(&grid, 0.1, 0.2, 1.0, 0.7).unwrap();
        let b = make_gaussian_phase_space(&grid, 0.1, 0.2, 1.0, 0.7).unwrap();
        assert_eq!(a.values, b.values);
    }
}
