use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::observables::chemical_potentials;
use crate::params::Params;
use crate::state::{gaussian_packet, TwoComponentState};

use super::propagator::Propagator;

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateOptions {
    /// Final imaginary time step.
    pub dtau: f64,
    /// Optional larger step run to convergence first.
    pub coarse_dtau: Option<f64>,
    /// Steps between chemical-potential checks.
    pub check_every: usize,
    pub max_steps: usize,
    /// Initial centers are `-d` (alpha) and `+d` (beta) in trap lengths.
    pub seed_displacement: f64,
    /// Relative amplitude noise applied to the initial guess.
    pub noise: f64,
    pub seed: u64,
}

impl Default for GroundStateOptions {
    fn default() -> Self {
        GroundStateOptions {
            dtau: 1e-3,
            coarse_dtau: Some(1e-2),
            check_every: 100,
            max_steps: 2_000_000,
            seed_displacement: 0.1,
            noise: 1e-6,
            seed: 0x5eed,
        }
    }
}

impl GroundStateOptions {
    /// Centered, noise-free initial Gaussians.
    pub fn symmetric() -> Self {
        GroundStateOptions {
            seed_displacement: 0.0,
            noise: 0.0,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub state: TwoComponentState,
    pub mu_alpha: f64,
    pub mu_beta: f64,
    pub steps: usize,
    /// Largest chemical-potential change at the final check.
    pub last_change: f64,
}

/// Width of a Gaussian guess: the larger of the oscillator width and the
/// rms width of the Thomas-Fermi profile for the species' own coupling.
fn guess_width(g_n: f64, omega: f64) -> f64 {
    let oscillator = (0.5 / omega).sqrt();
    let mu_tf = (3.0 * g_n * omega / (4.0 * 2f64.sqrt())).powf(2.0 / 3.0);
    let r_tf = (2.0 * mu_tf).sqrt() / omega;
    oscillator.max(r_tf / 5f64.sqrt())
}

/// Initial guess: two Gaussians displaced by `-+seed_displacement` trap
/// lengths with deterministic multiplicative noise.
pub fn initial_guess(
    params: &Params,
    grid: Arc<Grid>,
    options: &GroundStateOptions,
) -> Result<TwoComponentState> {
    let ell = 1.0 / params.omega.sqrt();
    let d = options.seed_displacement * ell;
    let l = grid.half_length();
    let wa = guess_width(params.g_alpha * params.n_alpha + params.g_alphabeta * params.n_beta, params.omega)
        .min((l - d.abs()) / 6.0);
    let wb = guess_width(params.g_beta * params.n_beta + params.g_alphabeta * params.n_alpha, params.omega)
        .min((l - d.abs()) / 6.0);
    let a = gaussian_packet(&grid, params.n_alpha, -d, 0.0, wa)?;
    let b = gaussian_packet(&grid, params.n_beta, d, 0.0, wb)?;
    let mut state = TwoComponentState::new(grid, a, b)?;
    if options.noise > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for z in state.psi_alpha.iter_mut().chain(state.psi_beta.iter_mut()) {
            let r: f64 = rng.gen_range(-1.0..1.0);
            *z *= 1.0 + options.noise * r;
        }
        state.normalize(params);
    }
    Ok(state)
}

/// Imaginary-time relaxation to the ground state with default options.
pub fn ground_state_imaginary_time(params: &Params, grid: Arc<Grid>, tol: f64) -> Result<GroundState> {
    ground_state_with(params, grid, tol, &GroundStateOptions::default())
}

pub fn ground_state_with(
    params: &Params,
    grid: Arc<Grid>,
    tol: f64,
    options: &GroundStateOptions,
) -> Result<GroundState> {
    let guess = initial_guess(params, grid, options)?;
    relax_from(guess, params, tol, options)
}

/// Relaxes a given state in imaginary time. Converged when both chemical
/// potentials change by less than `tol` between checks, at every stage.
pub fn relax_from(
    mut state: TwoComponentState,
    params: &Params,
    tol: f64,
    options: &GroundStateOptions,
) -> Result<GroundState> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParams(format!("tol = {tol} must be positive")));
    }
    if options.check_every == 0 {
        return Err(Error::InvalidParams("check_every must be positive".into()));
    }
    params.validate()?;
    state.normalize(params);
    let stages: Vec<f64> = options
        .coarse_dtau
        .into_iter()
        .filter(|&c| c > options.dtau)
        .chain(std::iter::once(options.dtau))
        .collect();
    let mut steps = 0usize;
    let mut result = None;
    for dtau in stages {
        let mut prop = Propagator::imaginary_time(state.grid().clone(), *params, dtau);
        let mut mu = chemical_potentials(&state, params, prop.spectral());
        let mut change = f64::INFINITY;
        while change >= tol {
            for _ in 0..options.check_every {
                steps += 1;
                prop.step(&mut state, steps as f64 * dtau)?;
            }
            let next = chemical_potentials(&state, params, prop.spectral());
            change = (next.0 - mu.0).abs().max((next.1 - mu.1).abs());
            mu = next;
            if steps >= options.max_steps && change >= tol {
                return Err(Error::NoConvergence {
                    iterations: steps,
                    last_change: change,
                });
            }
        }
        result = Some((mu, change));
    }
    let ((mu_alpha, mu_beta), last_change) = result.expect("at least one stage");
    Ok(GroundState {
        state,
        mu_alpha,
        mu_beta,
        steps,
        last_change,
    })
}

/// Ground state followed by a rigid displacement and boost of each
/// component: `[(shift, momentum); 2]` for alpha then beta.
pub fn displaced_ground_state(
    ground: &TwoComponentState,
    shifts: [(f64, f64); 2],
) -> TwoComponentState {
    let spectral = crate::spectral::Spectral::new(ground.grid().clone());
    ground.displaced(&spectral, shifts)
}
