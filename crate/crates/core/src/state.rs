//! Two-component wavefunctions sampled on a grid, and Gaussian initial packets.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::params::Params;

/// Largest tolerated mass outside the box for an analytic packet.
pub const CLIP_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Alpha,
    Beta,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::Alpha, Component::Beta];

    pub fn name(self) -> &'static str {
        match self {
            Component::Alpha => "alpha",
            Component::Beta => "beta",
        }
    }

    pub fn other(self) -> Component {
        match self {
            Component::Alpha => Component::Beta,
            Component::Beta => Component::Alpha,
        }
    }
}

/// Description of a traveling Gaussian packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Packet {
    pub x0: f64,
    pub p0: f64,
    pub width: f64,
}

impl Packet {
    pub fn new(x0: f64, p0: f64, width: f64) -> Self {
        Packet { x0, p0, width }
    }

    pub fn at_rest(x0: f64, width: f64) -> Self {
        Packet::new(x0, 0.0, width)
    }
}

/// Samples `sqrt(N) (2 pi W^2)^(-1/4) exp(-(x-x0)^2/4W^2) exp(i p0 (x - x0/2))`
/// and renormalizes to `n_particles` under the discrete `sum |psi|^2 dx`.
///
/// Packets whose `+-5W` support leaves the box, or whose discrete norm
/// misses `n_particles` by more than [`CLIP_TOLERANCE`] before
/// renormalization, are rejected.
pub fn gaussian_packet(
    grid: &Grid,
    n_particles: f64,
    x0: f64,
    p0: f64,
    width: f64,
) -> Result<Vec<Complex64>> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::InvalidParams(format!("width = {width} must be positive")));
    }
    if !(n_particles.is_finite() && n_particles > 0.0) {
        return Err(Error::InvalidParams(format!(
            "n_particles = {n_particles} must be positive"
        )));
    }
    let amp = n_particles.sqrt() / (2.0 * PI * width * width).powf(0.25);
    let psi: Vec<Complex64> = grid
        .points()
        .iter()
        .map(|&x| {
            let envelope = amp * (-(x - x0).powi(2) / (4.0 * width * width)).exp();
            Complex64::from_polar(envelope, p0 * (x - 0.5 * x0))
        })
        .collect();
    let norm = norm_of(grid, &psi);
    let deficit = (norm - n_particles).abs() / n_particles;
    let l = grid.half_length();
    let inside = x0 - 5.0 * width >= -l && x0 + 5.0 * width <= l;
    if !inside || deficit > CLIP_TOLERANCE {
        return Err(Error::ClippedPacket { deficit });
    }
    let scale = (n_particles / norm).sqrt();
    Ok(psi.into_iter().map(|z| z * scale).collect())
}

/// `sum_j |psi_j|^2 dx`.
pub fn norm_of(grid: &Grid, psi: &[Complex64]) -> f64 {
    psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.dx()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoComponentState {
    grid: Arc<Grid>,
    pub psi_alpha: Vec<Complex64>,
    pub psi_beta: Vec<Complex64>,
}

impl TwoComponentState {
    pub fn new(
        grid: Arc<Grid>,
        psi_alpha: Vec<Complex64>,
        psi_beta: Vec<Complex64>,
    ) -> Result<Self> {
        let n = grid.n_points();
        if psi_alpha.len() != n || psi_beta.len() != n {
            return Err(Error::GridMismatch(format!(
                "component lengths ({}, {}) differ from n_points = {n}",
                psi_alpha.len(),
                psi_beta.len()
            )));
        }
        Ok(TwoComponentState {
            grid,
            psi_alpha,
            psi_beta,
        })
    }

    /// Two Gaussian packets normalized to `params.n_alpha` and `params.n_beta`.
    pub fn gaussians(grid: Arc<Grid>, params: &Params, alpha: Packet, beta: Packet) -> Result<Self> {
        let a = gaussian_packet(&grid, params.n_alpha, alpha.x0, alpha.p0, alpha.width)?;
        let b = gaussian_packet(&grid, params.n_beta, beta.x0, beta.p0, beta.width)?;
        TwoComponentState::new(grid, a, b)
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn component(&self, c: Component) -> &[Complex64] {
        match c {
            Component::Alpha => &self.psi_alpha,
            Component::Beta => &self.psi_beta,
        }
    }

    pub fn component_mut(&mut self, c: Component) -> &mut Vec<Complex64> {
        match c {
            Component::Alpha => &mut self.psi_alpha,
            Component::Beta => &mut self.psi_beta,
        }
    }

    pub fn norm(&self, c: Component) -> f64 {
        norm_of(&self.grid, self.component(c))
    }

    pub fn density(&self, c: Component) -> Vec<f64> {
        self.component(c).iter().map(|z| z.norm_sqr()).collect()
    }

    /// Rescales both components to the particle numbers in `params`.
    pub fn normalize(&mut self, params: &Params) {
        for (c, target) in [
            (Component::Alpha, params.n_alpha),
            (Component::Beta, params.n_beta),
        ] {
            let norm = self.norm(c);
            if norm > 0.0 {
                let scale = (target / norm).sqrt();
                self.component_mut(c).iter_mut().for_each(|z| *z *= scale);
            }
        }
    }

    /// Checks both norms against `params` within `rel_tol`.
    pub fn check_normalized(&self, params: &Params, rel_tol: f64) -> Result<()> {
        for (c, expected) in [
            (Component::Alpha, params.n_alpha),
            (Component::Beta, params.n_beta),
        ] {
            let actual = self.norm(c);
            if actual.is_nan() || (actual - expected).abs() > rel_tol * expected {
                return Err(Error::NotNormalized {
                    component: c.name(),
                    actual,
                    expected,
                });
            }
        }
        Ok(())
    }

    /// Translates each component by `shift` (spectrally) and applies the
    /// boost `exp(i p (x - shift/2))`; `shifts` is `[(shift, p); 2]` for
    /// alpha then beta.
    pub fn displaced(&self, spectral: &crate::spectral::Spectral, shifts: [(f64, f64); 2]) -> Self {
        let mut out = self.clone();
        for (c, (shift, p)) in Component::BOTH.into_iter().zip(shifts) {
            let moved = if shift == 0.0 {
                self.component(c).to_vec()
            } else {
                spectral.translate(self.component(c), shift)
            };
            let boosted = moved
                .into_iter()
                .zip(self.grid.points())
                .map(|(z, &x)| z * Complex64::from_polar(1.0, p * (x - 0.5 * shift)))
                .collect();
            *out.component_mut(c) = boosted;
        }
        out
    }

    /// Largest amplitude across both components, or `None` if any sample is
    /// not finite.
    pub fn max_amplitude(&self) -> Option<f64> {
        let mut max = 0.0f64;
        for z in self.psi_alpha.iter().chain(&self.psi_beta) {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return None;
            }
            max = max.max(z.norm());
        }
        Some(max)
    }

    /// L2 distance `sqrt(sum_s sum_j |a - b|^2 dx)`.
    pub fn l2_distance(&self, other: &TwoComponentState) -> f64 {
        let dx = self.grid.dx();
        let sum: f64 = self
            .psi_alpha
            .iter()
            .zip(&other.psi_alpha)
            .chain(self.psi_beta.iter().zip(&other.psi_beta))
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        (sum * dx).sqrt()
    }

    /// Multiplies a component by a global phase `exp(i theta)`.
    pub fn rotate_phase(&mut self, c: Component, theta: f64) {
        let phase = Complex64::from_polar(1.0, theta);
        self.component_mut(c).iter_mut().for_each(|z| *z *= phase);
    }
}
