//! Uniform periodic grid on `[-L, L)` with FFT-ordered wavenumbers.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Smallest accepted number of grid points.
pub const MIN_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    n_points: usize,
    half_length: f64,
    dx: f64,
    points: Vec<f64>,
    wavenumbers: Vec<f64>,
}

/// Builds the grid `x_j = -L + j*dx`, `dx = 2L/n`. The right endpoint is
/// excluded; `n` must be a power of two no smaller than [`MIN_POINTS`].
pub fn make_grid(n_points: usize, half_length: f64) -> Result<Grid> {
    if !n_points.is_power_of_two() || n_points < MIN_POINTS {
        return Err(Error::InvalidGrid(format!(
            "n_points = {n_points} must be a power of two >= {MIN_POINTS}"
        )));
    }
    if !(half_length.is_finite() && half_length > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "half_length = {half_length} must be positive"
        )));
    }
    let dx = 2.0 * half_length / n_points as f64;
    let points = (0..n_points)
        .map(|j| -half_length + j as f64 * dx)
        .collect();
    let dk = PI / half_length;
    let half = n_points as i64 / 2;
    let wavenumbers = (0..n_points as i64)
        .map(|j| {
            let m = if j < half { j } else { j - n_points as i64 };
            m as f64 * dk
        })
        .collect();
    Ok(Grid {
        n_points,
        half_length,
        dx,
        points,
        wavenumbers,
    })
}

impl Grid {
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Wavenumbers in FFT ordering: `0, dk, ..., -n/2*dk, ..., -dk`.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn dk(&self) -> f64 {
        PI / self.half_length
    }

    /// Nyquist wavenumber `pi/dx`.
    pub fn k_max(&self) -> f64 {
        PI / self.dx
    }

    /// Rectangle-rule integral of samples on this grid.
    pub fn integrate(&self, values: impl IntoIterator<Item = f64>) -> f64 {
        values.into_iter().sum::<f64>() * self.dx
    }
}

/// Box half-length that keeps `8 * max(width, R_TF)` inside the domain,
/// where `R_TF = sqrt(2 mu_TF) / omega` is the 1D Thomas-Fermi radius for
/// `g*N` (pass the largest single-species `g_s N_s + g_ab N_other`).
pub fn recommended_half_length(width: f64, g_n: f64, omega: f64) -> f64 {
    let mu_tf = (3.0 * g_n.max(0.0) * omega / (4.0 * 2f64.sqrt())).powf(2.0 / 3.0);
    let r_tf = (2.0 * mu_tf).sqrt() / omega;
    8.0 * width.max(r_tf)
}
