//! Moments, energy functional and overlap diagnostics of a two-component state.

use crate::error::Result;
use crate::params::Params;
use crate::spectral::Spectral;
use crate::state::{Component, TwoComponentState};

/// Relative norm deviation above which `observables` rejects a state.
pub const NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    pub norm_alpha: f64,
    pub norm_beta: f64,
    pub center_alpha: f64,
    pub center_beta: f64,
    pub width_alpha: f64,
    pub width_beta: f64,
    pub energy: f64,
    pub overlap_fraction: f64,
}

impl Observables {
    pub fn center(&self, c: Component) -> f64 {
        match c {
            Component::Alpha => self.center_alpha,
            Component::Beta => self.center_beta,
        }
    }

    pub fn width(&self, c: Component) -> f64 {
        match c {
            Component::Alpha => self.width_alpha,
            Component::Beta => self.width_beta,
        }
    }

    /// `(N_a <x>_a + N_b <x>_b) / (N_a + N_b)`.
    pub fn center_of_mass(&self) -> f64 {
        (self.norm_alpha * self.center_alpha + self.norm_beta * self.center_beta)
            / (self.norm_alpha + self.norm_beta)
    }

    pub fn separation(&self) -> f64 {
        self.center_alpha - self.center_beta
    }
}

/// Density moments `(norm, <x>, sqrt(<x^2> - <x>^2))`.
pub fn moments(x: &[f64], density: &[f64], dx: f64) -> (f64, f64, f64) {
    let (mut m0, mut m1) = (0.0, 0.0);
    for (&xi, &d) in x.iter().zip(density) {
        m0 += d;
        m1 += d * xi;
    }
    let mean = m1 / m0;
    let var: f64 = x
        .iter()
        .zip(density)
        .map(|(&xi, &d)| d * (xi - mean) * (xi - mean))
        .sum::<f64>()
        / m0;
    (m0 * dx, mean, var.max(0.0).sqrt())
}

/// Energy contributions of the coupled GPE functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParts {
    pub kinetic: f64,
    pub trap: f64,
    pub intra: f64,
    pub inter: f64,
}

impl EnergyParts {
    pub fn total(&self) -> f64 {
        self.kinetic + self.trap + self.intra + self.inter
    }
}

/// `E = sum_s int [|psi_s'|^2/2 + omega^2 x^2 |psi_s|^2/2 + g_s |psi_s|^4/2]
///  + g_ab int |psi_a|^2 |psi_b|^2`, kinetic part evaluated spectrally.
pub fn energy_parts(state: &TwoComponentState, params: &Params, spectral: &Spectral) -> EnergyParts {
    let grid = state.grid();
    let dx = grid.dx();
    let na = state.density(Component::Alpha);
    let nb = state.density(Component::Beta);
    let kinetic = spectral.kinetic_energy(&state.psi_alpha) + spectral.kinetic_energy(&state.psi_beta);
    let half_w2 = 0.5 * params.omega * params.omega;
    let (mut trap, mut intra, mut inter) = (0.0, 0.0, 0.0);
    for ((&x, &a), &b) in grid.points().iter().zip(&na).zip(&nb) {
        trap += half_w2 * x * x * (a + b);
        intra += 0.5 * (params.g_alpha * a * a + params.g_beta * b * b);
        inter += params.g_alphabeta * a * b;
    }
    EnergyParts {
        kinetic,
        trap: trap * dx,
        intra: intra * dx,
        inter: inter * dx,
    }
}

/// Amplitude overlap `int |psi_a| |psi_b| dx / sqrt(N_a N_b)`, clamped to `[0, 1]`.
pub fn overlap_fraction(state: &TwoComponentState) -> f64 {
    let dx = state.grid().dx();
    let cross: f64 = state
        .psi_alpha
        .iter()
        .zip(&state.psi_beta)
        .map(|(a, b)| a.norm() * b.norm())
        .sum::<f64>()
        * dx;
    let na = state.norm(Component::Alpha);
    let nb = state.norm(Component::Beta);
    (cross / (na * nb).sqrt()).clamp(0.0, 1.0)
}

/// All observables of a normalized state.
pub fn observables(state: &TwoComponentState, params: &Params) -> Result<Observables> {
    let spectral = Spectral::new(state.grid().clone());
    observables_with(state, params, &spectral)
}

/// As [`observables`], reusing prepared FFT plans.
pub fn observables_with(
    state: &TwoComponentState,
    params: &Params,
    spectral: &Spectral,
) -> Result<Observables> {
    state.check_normalized(params, NORM_TOLERANCE)?;
    Ok(observables_unchecked(state, params, spectral))
}

pub(crate) fn observables_unchecked(
    state: &TwoComponentState,
    params: &Params,
    spectral: &Spectral,
) -> Observables {
    let grid = state.grid();
    let x = grid.points();
    let (norm_alpha, center_alpha, width_alpha) =
        moments(x, &state.density(Component::Alpha), grid.dx());
    let (norm_beta, center_beta, width_beta) =
        moments(x, &state.density(Component::Beta), grid.dx());
    Observables {
        norm_alpha,
        norm_beta,
        center_alpha,
        center_beta,
        width_alpha,
        width_beta,
        energy: energy_parts(state, params, spectral).total(),
        overlap_fraction: overlap_fraction(state),
    }
}

/// Chemical potentials `mu_s = <psi_s| H_s |psi_s> / N_s`.
pub fn chemical_potentials(
    state: &TwoComponentState,
    params: &Params,
    spectral: &Spectral,
) -> (f64, f64) {
    let grid = state.grid();
    let dx = grid.dx();
    let na = state.density(Component::Alpha);
    let nb = state.density(Component::Beta);
    let half_w2 = 0.5 * params.omega * params.omega;
    let mut pa = 0.0;
    let mut pb = 0.0;
    for ((&x, &a), &b) in grid.points().iter().zip(&na).zip(&nb) {
        let v = half_w2 * x * x;
        pa += (v + params.g_alpha * a + params.g_alphabeta * b) * a;
        pb += (v + params.g_beta * b + params.g_alphabeta * a) * b;
    }
    let norm_a = na.iter().sum::<f64>() * dx;
    let norm_b = nb.iter().sum::<f64>() * dx;
    let mu_a = (spectral.kinetic_energy(&state.psi_alpha) + pa * dx) / norm_a;
    let mu_b = (spectral.kinetic_energy(&state.psi_beta) + pb * dx) / norm_b;
    (mu_a, mu_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use crate::state::{gaussian_packet, Packet};
    use num_complex::Complex64;
    use std::sync::Arc;

    fn unit_pair(sep: f64) -> (TwoComponentState, Params) {
        let g = Arc::new(make_grid(512, 16.0).unwrap());
        let p = Params::ideal(1.0).unwrap();
        let s = TwoComponentState::gaussians(
            g,
            &p,
            Packet::at_rest(-sep / 2.0, 1.0),
            Packet::at_rest(sep / 2.0, 1.0),
        )
        .unwrap();
        (s, p)
    }

    #[test]
    fn identical_profiles_overlap_one() {
        let (s, p) = unit_pair(0.0);
        let o = observables(&s, &p).unwrap();
        assert!((o.overlap_fraction - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_profiles_overlap_vanishes() {
        let (s, p) = unit_pair(20.0);
        let o = observables(&s, &p).unwrap();
        assert!(o.overlap_fraction < 1e-8);
    }

    #[test]
    fn oscillator_ground_energy() {
        // W^2 = 1/2 is the Omega = 1 ground state; each component carries 1/2.
        let g = Arc::new(make_grid(256, 8.0).unwrap());
        let p = Params::new(0.0, 0.0, 0.0, 1.0, 1.0, 1.0).unwrap();
        let w = 0.5f64.sqrt();
        let s = TwoComponentState::gaussians(g.clone(), &p, Packet::at_rest(0.0, w), Packet::at_rest(0.0, w))
            .unwrap();
        let o = observables(&s, &p).unwrap();
        assert!((o.energy - 1.0).abs() < 1e-12, "E = {}", o.energy);

        // Independent quadrature of the same functional with the analytic derivative.
        let dx = g.dx();
        let mut e = 0.0;
        for &x in g.points() {
            let amp = (2.0 * std::f64::consts::PI * w * w).powf(-0.25) * (-x * x / (4.0 * w * w)).exp();
            let d = -x / (2.0 * w * w) * amp;
            e += 0.5 * d * d + 0.5 * x * x * amp * amp;
        }
        assert!((e * dx - 0.5).abs() < 1e-12);
    }

    #[test]
    fn spectral_kinetic_matches_analytic_derivative() {
        let g = Arc::new(make_grid(512, 12.0).unwrap());
        let spectral = Spectral::new(g.clone());
        let (x0, p0, w) = (0.7, 1.3, 0.9);
        let psi = gaussian_packet(&g, 1.0, x0, p0, w).unwrap();
        let amp0 = (2.0 * std::f64::consts::PI * w * w).powf(-0.25);
        let quad: f64 = g
            .points()
            .iter()
            .map(|&x| {
                let env = amp0 * (-(x - x0).powi(2) / (4.0 * w * w)).exp();
                let phase = Complex64::from_polar(1.0, p0 * (x - 0.5 * x0));
                let d = Complex64::new(-(x - x0) / (2.0 * w * w), p0) * env * phase;
                0.5 * d.norm_sqr()
            })
            .sum::<f64>()
            * g.dx();
        let spec = spectral.kinetic_energy(&psi);
        assert!(((spec - quad) / quad).abs() < 1e-10, "{spec} vs {quad}");
    }

    #[test]
    fn momentum_of_boosted_packet() {
        let g = Arc::new(make_grid(256, 8.0).unwrap());
        let spectral = Spectral::new(g.clone());
        let psi = gaussian_packet(&g, 1.0, 0.0, 2.0, 1.0).unwrap();
        // Oracle: <-i d/dx> from the spectral derivative, in real space.
        let d = spectral.derivative(&psi);
        let p: f64 = psi
            .iter()
            .zip(&d)
            .map(|(z, dz)| (z.conj() * Complex64::new(0.0, -1.0) * dz).re)
            .sum::<f64>()
            * g.dx();
        assert!((p - 2.0).abs() < 1e-6);
        assert!((spectral.momentum(&psi) - 2.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_unnormalized() {
        let (mut s, p) = unit_pair(0.0);
        s.psi_beta.iter_mut().for_each(|z| *z *= 1.01);
        assert!(observables(&s, &p).is_err());
    }

    #[test]
    fn global_phase_invariance() {
        let (s, p) = unit_pair(1.5);
        let mut r = s.clone();
        r.rotate_phase(Component::Alpha, 0.83);
        r.rotate_phase(Component::Beta, -2.1);
        let a = observables(&s, &p).unwrap();
        let b = observables(&r, &p).unwrap();
        assert!((a.energy - b.energy).abs() < 1e-12);
        assert!((a.overlap_fraction - b.overlap_fraction).abs() < 1e-14);
        assert!((a.center_alpha - b.center_alpha).abs() < 1e-14);
    }
}
