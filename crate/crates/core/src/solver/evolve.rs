use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::observables::{observables_unchecked, Observables, NORM_TOLERANCE};
use crate::params::Params;
use crate::state::TwoComponentState;

use super::propagator::Propagator;

/// Default real-time step in trap units.
pub const DEFAULT_DT: f64 = 1e-3;

/// Relative energy drift above which a trajectory is flagged.
pub const ENERGY_DRIFT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    pub dt: f64,
    pub t_final: f64,
    pub record_every: usize,
    /// Rescale norms after each step. Only meaningful for imaginary or
    /// damped stepping; real-time evolution is norm-preserving.
    pub renormalize: bool,
    /// Keep a copy of the full state at every recorded time.
    pub store_states: bool,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            dt: DEFAULT_DT,
            t_final: 1.0,
            record_every: 10,
            renormalize: false,
            store_states: false,
        }
    }
}

impl EvolutionConfig {
    pub fn new(dt: f64, t_final: f64, record_every: usize) -> Self {
        EvolutionConfig {
            dt,
            t_final,
            record_every,
            ..Default::default()
        }
    }

    pub fn storing_states(mut self) -> Self {
        self.store_states = true;
        self
    }

    pub fn n_steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    /// Checks positivity and the kinetic phase bound `dt k_max^2 / 2 < pi`.
    pub fn validate(&self, grid: &Grid) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidParams(format!("dt = {} must be positive", self.dt)));
        }
        if !(self.t_final.is_finite() && self.t_final > 0.0) {
            return Err(Error::InvalidParams(format!(
                "t_final = {} must be positive",
                self.t_final
            )));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParams("record_every must be positive".into()));
        }
        let k_max = grid.k_max();
        if self.dt * k_max * k_max / 2.0 >= PI {
            return Err(Error::TimeStepTooLarge { dt: self.dt, k_max });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub snapshots: Vec<Observables>,
    pub states: Vec<TwoComponentState>,
    /// `max_t |E(t) - E(0)| / |E(0)|` over recorded times.
    pub energy_drift: f64,
    pub drift_flagged: bool,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn series(&self, f: impl Fn(&Observables) -> f64) -> Vec<f64> {
        self.snapshots.iter().map(f).collect()
    }
}

/// Real-time evolution with observables recorded every `record_every` steps
/// (the initial state is always recorded).
pub fn evolve(
    state: &TwoComponentState,
    params: &Params,
    config: &EvolutionConfig,
) -> Result<Trajectory> {
    config.validate(state.grid())?;
    state.check_normalized(params, NORM_TOLERANCE)?;
    let prop = Propagator::real_time(state.grid().clone(), *params, config.dt)
        .with_renormalize(config.renormalize);
    run(state.clone(), prop, config)
}

pub(crate) fn run(
    mut state: TwoComponentState,
    mut prop: Propagator,
    config: &EvolutionConfig,
) -> Result<Trajectory> {
    let params = *prop.params();
    let mut traj = Trajectory::default();
    let record = |traj: &mut Trajectory, t: f64, s: &TwoComponentState, prop: &Propagator| {
        traj.times.push(t);
        traj.snapshots
            .push(observables_unchecked(s, &params, prop.spectral()));
        if config.store_states {
            traj.states.push(s.clone());
        }
    };
    record(&mut traj, 0.0, &state, &prop);
    let n_steps = config.n_steps();
    for i in 1..=n_steps {
        let t = i as f64 * config.dt;
        prop.step(&mut state, t)?;
        if i % config.record_every == 0 || i == n_steps {
            record(&mut traj, t, &state, &prop);
        }
    }
    let e0 = traj.snapshots[0].energy;
    traj.energy_drift = traj
        .snapshots
        .iter()
        .map(|o| ((o.energy - e0) / e0).abs())
        .fold(0.0, f64::max);
    traj.drift_flagged = traj.energy_drift > ENERGY_DRIFT_TOLERANCE;
    Ok(traj)
}

/// Real-time evolution with a complex step `dt (1 - i gamma)` and per-step
/// renormalization: relaxes slowly toward a stationary state while keeping
/// the real-time dynamics visible.
pub fn evolve_damped(
    state: &TwoComponentState,
    params: &Params,
    config: &EvolutionConfig,
    gamma: f64,
) -> Result<Trajectory> {
    config.validate(state.grid())?;
    state.check_normalized(params, NORM_TOLERANCE)?;
    let prop = Propagator::damped(state.grid().clone(), *params, config.dt, gamma);
    run(state.clone(), prop, config)
}
