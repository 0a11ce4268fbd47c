//! Thin wrappers around rustfft: cached plans, wavenumber ladders, spectral
//! shifts and derivatives on periodic grids.
//!
//! Conventions: `forward` is the unnormalized DFT with kernel exp(-2πi jk/n),
//! `inverse` carries the 1/n factor. Wavenumber ladders use the signed FFT
//! ordering with the Nyquist bin mapped to -n/2, matching the momentum grids
//! produced by [`crate::grid::Grid1D::dual_momentum`].

use ndarray::{Array2, Array4, Axis};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

#[derive(Clone)]
pub struct FftPlan {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl FftPlan {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Unnormalized forward DFT in place.
    pub fn forward(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.fwd.process(buf);
    }

    /// Inverse DFT in place, including the 1/n normalization.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.inv.process(buf);
        let scale = 1.0 / self.n as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }

    /// Inverse DFT without the 1/n factor (plain conjugate-kernel sum).
    pub fn inverse_unnormalized(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.inv.process(buf);
    }
}

/// Signed FFT-ordered wavenumbers 2π m / length, bin n/2 mapped to m = -n/2.
pub fn wavenumbers(n: usize, length: f64) -> Vec<f64> {
    let base = 2.0 * std::f64::consts::PI / length;
    (0..n)
        .map(|j| {
            let m = if j < n / 2 { j as isize } else { j as isize - n as isize };
            base * m as f64
        })
        .collect()
}

/// Multiplier table for the spectral derivative (ik)^order.
///
/// The Nyquist bin is zeroed for odd orders; even orders keep the real
/// (-k²)^(order/2) value.
pub fn derivative_multiplier(n: usize, length: f64, order: u32) -> Vec<Complex64> {
    let ks = wavenumbers(n, length);
    ks.iter()
        .enumerate()
        .map(|(j, &k)| {
            if order % 2 == 1 && j == n / 2 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, k).powu(order)
            }
        })
        .collect()
}

/// Multiplier table realizing f(x) -> f(x + shift) on a periodic grid.
///
/// The Nyquist bin gets cos(k s) so that shifting a real field stays real and
/// shift tables for ±s are exact conjugates.
pub fn shift_multiplier(n: usize, length: f64, shift: f64) -> Vec<Complex64> {
    let ks = wavenumbers(n, length);
    ks.iter()
        .enumerate()
        .map(|(j, &k)| {
            let phase = k * shift;
            if j == n / 2 {
                Complex64::new(phase.cos(), 0.0)
            } else {
                Complex64::new(0.0, phase).exp()
            }
        })
        .collect()
}

/// Returns samples of f at x + shift for every grid point, via FFT.
pub fn shifted_samples(plan: &FftPlan, values: &[Complex64], mult: &[Complex64]) -> Vec<Complex64> {
    let mut buf = values.to_vec();
    plan.forward(&mut buf);
    for (v, m) in buf.iter_mut().zip(mult) {
        *v *= m;
    }
    plan.inverse(&mut buf);
    buf
}

/// Spectral derivative of the given order. Input is consumed as a scratch copy.
pub fn spectral_derivative(
    plan: &FftPlan,
    values: &[Complex64],
    length: f64,
    order: u32,
) -> Vec<Complex64> {
    let mult = derivative_multiplier(values.len(), length, order);
    let mut buf = values.to_vec();
    plan.forward(&mut buf);
    for (v, m) in buf.iter_mut().zip(&mult) {
        *v *= m;
    }
    plan.inverse(&mut buf);
    buf
}

/// Applies `op` to every row (axis 0 slice) of a standard-layout 2-D array in
/// parallel. Rows are disjoint, so output is bit-identical for any thread count.
pub fn par_rows_mut<F>(arr: &mut Array2<Complex64>, op: F)
where
    F: Fn(usize, &mut [Complex64]) + Sync,
{
    arr.axis_iter_mut(Axis(0))
        .into_par_iter()
        .enumerate()
        .for_each(|(i, mut row)| {
            let slice = row.as_slice_mut().expect("row-major layout expected");
            op(i, slice);
        });
}

/// In-place 2-D FFT (rows, then columns via transpose).
pub fn fft2(arr: &mut Array2<Complex64>, plan_rows: &FftPlan, plan_cols: &FftPlan, inverse: bool) {
    apply_rows(arr, plan_rows, inverse);
    let mut t = arr.t().to_owned().as_standard_layout().into_owned();
    apply_rows(&mut t, plan_cols, inverse);
    arr.assign(&t.t());
}

fn apply_rows(arr: &mut Array2<Complex64>, plan: &FftPlan, inverse: bool) {
    par_rows_mut(arr, |_, row| {
        if inverse {
            plan.inverse(row);
        } else {
            plan.forward(row);
        }
    });
}

/// FFT along one axis of a rank-4 array (used by the two-particle solver).
pub fn fft_axis4(arr: &mut Array4<Complex64>, axis: usize, plan: &FftPlan, inverse: bool) {
    let n = arr.shape()[axis];
    debug_assert_eq!(n, plan.len());
    let mut perm = [0usize, 1, 2, 3];
    perm.swap(axis, 3);
    let mut moved = arr
        .view()
        .permuted_axes(perm)
        .to_owned()
        .as_standard_layout()
        .into_owned();
    {
        let flat_rows = moved.len() / n;
        let slice = moved.as_slice_mut().expect("standard layout");
        slice
            .par_chunks_mut(n)
            .with_min_len(flat_rows / rayon::current_num_threads().max(1) + 1)
            .for_each(|row| {
                if inverse {
                    plan.inverse(row);
                } else {
                    plan.forward(row);
                }
            });
    }
    arr.assign(&moved.permuted_axes(perm));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_moves_gaussian() {
        let n = 64;
        let length = 16.0;
        let dx = length / n as f64;
        let xs: Vec<f64> = (0..n).map(|j| -8.0 + j as f64 * dx).collect();
        let f: Vec<Complex64> = xs
            .iter()
            .map(|&x| Complex64::new((-x * x / 2.0).exp(), 0.0))
            .collect();
        let plan = FftPlan::new(n);
        let mult = shift_multiplier(n, length, 3.0 * dx);
        let shifted = shifted_samples(&plan, &f, &mult);
        for j in 0..n - 3 {
            assert!((shifted[j].re - f[j + 3].re).abs() < 1e-12);
            assert!(shifted[j].im.abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_of_sine() {
        let n = 64;
        let length = 2.0 * std::f64::consts::PI;
        let dx = length / n as f64;
        let f: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new((3.0 * j as f64 * dx).sin(), 0.0))
            .collect();
        let plan = FftPlan::new(n);
        let df = spectral_derivative(&plan, &f, length, 1);
        for j in 0..n {
            let expect = 3.0 * (3.0 * j as f64 * dx).cos();
            assert!((df[j].re - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn roundtrip_preserves_norm() {
        let n = 32;
        let plan = FftPlan::new(n);
        let mut buf: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(j as f64, (j * j) as f64 % 7.0))
            .collect();
        let orig = buf.clone();
        plan.forward(&mut buf);
        plan.inverse(&mut buf);
        for (a, b) in buf.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
