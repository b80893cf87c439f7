//! FFT plans and spectral operators bound to one [`Grid`].

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::Grid;

#[derive(Clone)]
pub struct Spectral {
    grid: Arc<Grid>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scratch_len: usize,
}

impl fmt::Debug for Spectral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Spectral")
            .field("n_points", &self.grid.n_points())
            .finish()
    }
}

impl Spectral {
    pub fn new(grid: Arc<Grid>) -> Self {
        let mut planner = FftPlanner::new();
        let n = grid.n_points();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        Spectral {
            grid,
            forward,
            inverse,
            scratch_len,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn scratch(&self) -> Vec<Complex64> {
        vec![Complex64::default(); self.scratch_len]
    }

    /// Unnormalized forward transform, in place.
    pub fn forward_with(&self, data: &mut [Complex64], scratch: &mut [Complex64]) {
        self.forward.process_with_scratch(data, scratch);
    }

    /// Inverse transform including the `1/n` factor, in place.
    pub fn inverse_with(&self, data: &mut [Complex64], scratch: &mut [Complex64]) {
        self.inverse.process_with_scratch(data, scratch);
        let scale = 1.0 / data.len() as f64;
        data.iter_mut().for_each(|z| *z *= scale);
    }

    pub fn to_spectrum(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = psi.to_vec();
        let mut scratch = self.scratch();
        self.forward_with(&mut out, &mut scratch);
        out
    }

    /// `d psi / dx` by multiplication with `i k`.
    pub fn derivative(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut scratch = self.scratch();
        let mut spec = psi.to_vec();
        self.forward_with(&mut spec, &mut scratch);
        for (z, &k) in spec.iter_mut().zip(self.grid.wavenumbers()) {
            *z *= Complex64::new(0.0, k);
        }
        self.inverse_with(&mut spec, &mut scratch);
        spec
    }

    /// `sum_k |k|^2 |psi_k|^2 * dx / n / 2`, i.e. `(1/2) int |psi'|^2 dx`.
    pub fn kinetic_energy(&self, psi: &[Complex64]) -> f64 {
        let spec = self.to_spectrum(psi);
        let weight = self.grid.dx() / self.grid.n_points() as f64;
        0.5 * weight
            * spec
                .iter()
                .zip(self.grid.wavenumbers())
                .map(|(z, &k)| k * k * z.norm_sqr())
                .sum::<f64>()
    }

    /// `int psi* (-i d/dx) psi dx` evaluated spectrally.
    pub fn momentum(&self, psi: &[Complex64]) -> f64 {
        let spec = self.to_spectrum(psi);
        let weight = self.grid.dx() / self.grid.n_points() as f64;
        weight
            * spec
                .iter()
                .zip(self.grid.wavenumbers())
                .map(|(z, &k)| k * z.norm_sqr())
                .sum::<f64>()
    }

    /// Translates a periodic sample set by `shift` (positive moves right).
    pub fn translate(&self, values: &[Complex64], shift: f64) -> Vec<Complex64> {
        let mut scratch = self.scratch();
        let mut spec = values.to_vec();
        self.forward_with(&mut spec, &mut scratch);
        for (z, &k) in spec.iter_mut().zip(self.grid.wavenumbers()) {
            *z *= Complex64::from_polar(1.0, -k * shift);
        }
        // The Nyquist mode has no sign-symmetric partner; drop its phase.
        let nyq = self.grid.n_points() / 2;
        spec[nyq] = Complex64::new(0.0, 0.0);
        self.inverse_with(&mut spec, &mut scratch);
        spec
    }
}
