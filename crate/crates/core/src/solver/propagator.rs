use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::params::Params;
use crate::spectral::Spectral;
use crate::state::TwoComponentState;

/// Amplitude above which a state is considered blown up.
pub const BLOW_UP_AMPLITUDE: f64 = 1e6;

/// Strang split-step propagator for one (possibly complex) time step.
///
/// A step applies `exp(-i (V + g n) dt/2)` with densities taken at the start
/// of the half step, then `exp(-i k^2 dt/2)` in spectral space, then the
/// second potential half step. `dt = -i tau` gives imaginary time and
/// `dt (1 - i gamma)` a damped real-time step.
#[derive(Debug, Clone)]
pub struct Propagator {
    params: Params,
    spectral: Spectral,
    dt: Complex64,
    potential: Vec<f64>,
    kinetic: Vec<Complex64>,
    renormalize: bool,
    scratch: Vec<Complex64>,
}

impl Propagator {
    pub fn new(grid: Arc<Grid>, params: Params, dt: Complex64) -> Self {
        let spectral = Spectral::new(grid.clone());
        let half_w2 = 0.5 * params.omega * params.omega;
        let potential = grid.points().iter().map(|&x| half_w2 * x * x).collect();
        let kinetic = grid
            .wavenumbers()
            .iter()
            .map(|&k| phase_factor(0.5 * k * k, dt))
            .collect();
        let scratch = spectral.scratch();
        Propagator {
            params,
            spectral,
            dt,
            potential,
            kinetic,
            renormalize: dt.im != 0.0,
            scratch,
        }
    }

    pub fn real_time(grid: Arc<Grid>, params: Params, dt: f64) -> Self {
        Propagator::new(grid, params, Complex64::new(dt, 0.0))
    }

    pub fn imaginary_time(grid: Arc<Grid>, params: Params, dtau: f64) -> Self {
        Propagator::new(grid, params, Complex64::new(0.0, -dtau))
    }

    /// Real-time step `dt` combined with damping `gamma`: `dt (1 - i gamma)`.
    pub fn damped(grid: Arc<Grid>, params: Params, dt: f64, gamma: f64) -> Self {
        Propagator::new(grid, params, Complex64::new(dt, -gamma * dt))
    }

    /// Overrides whether both components are rescaled to their particle
    /// numbers after every step (on by default for non-real `dt`).
    pub fn with_renormalize(mut self, renormalize: bool) -> Self {
        self.renormalize = renormalize;
        self
    }

    pub fn spectral(&self) -> &Spectral {
        &self.spectral
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn dt(&self) -> Complex64 {
        self.dt
    }

    /// Advances `state` by one step in place. `time` is only used in
    /// diagnostics.
    pub fn step(&mut self, state: &mut TwoComponentState, time: f64) -> Result<()> {
        self.potential_half_step(state);
        let TwoComponentState {
            psi_alpha, psi_beta, ..
        } = state;
        for psi in [psi_alpha, psi_beta] {
            self.spectral.forward_with(psi, &mut self.scratch);
            for (z, &f) in psi.iter_mut().zip(&self.kinetic) {
                *z *= f;
            }
            self.spectral.inverse_with(psi, &mut self.scratch);
        }
        self.potential_half_step(state);
        if self.renormalize {
            state.normalize(&self.params);
        }
        match state.max_amplitude() {
            None => Err(Error::BlowUp {
                time,
                reason: "non-finite amplitude".into(),
            }),
            Some(a) if a > BLOW_UP_AMPLITUDE => Err(Error::BlowUp {
                time,
                reason: format!("|psi| = {a:.3e} exceeds {BLOW_UP_AMPLITUDE:.0e}"),
            }),
            Some(_) => Ok(()),
        }
    }

    fn potential_half_step(&self, state: &mut TwoComponentState) {
        let p = &self.params;
        let half = 0.5 * self.dt;
        for ((a, b), &v) in state
            .psi_alpha
            .iter_mut()
            .zip(state.psi_beta.iter_mut())
            .zip(&self.potential)
        {
            let na = a.norm_sqr();
            let nb = b.norm_sqr();
            *a *= phase_factor(v + p.g_alpha * na + p.g_alphabeta * nb, half);
            *b *= phase_factor(v + p.g_beta * nb + p.g_alphabeta * na, half);
        }
    }
}

/// `exp(-i energy dt)`, exactly unimodular for real `dt`.
fn phase_factor(energy: f64, dt: Complex64) -> Complex64 {
    if dt.im == 0.0 {
        Complex64::from_polar(1.0, -energy * dt.re)
    } else {
        (Complex64::new(0.0, -energy) * dt).exp()
    }
}

/// One real-time Strang step of size `dt`, returning the new state.
pub fn step_real_time(state: &TwoComponentState, params: &Params, dt: f64) -> Result<TwoComponentState> {
    state.check_normalized(params, crate::observables::NORM_TOLERANCE)?;
    let mut prop = Propagator::real_time(state.grid().clone(), *params, dt);
    let mut out = state.clone();
    prop.step(&mut out, dt)?;
    Ok(out)
}
