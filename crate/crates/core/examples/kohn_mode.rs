//! A displaced ground state oscillates rigidly at the trap frequency,
//! whatever the interactions.

use std::error::Error;
use std::f64::consts::PI;
use std::sync::Arc;

use gpe_duet::analysis::fit_sinusoid;
use gpe_duet::solver::{displaced_ground_state, evolve, ground_state_imaginary_time, EvolutionConfig};
use gpe_duet::{make_grid, Params};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let grid = Arc::new(make_grid(256, 12.0)?);
    let omega = 1.5;
    let params = Params::new(1.0, 0.8, 0.6, omega, 10.0, 6.0)?;
    let ground = ground_state_imaginary_time(&params, grid, 1e-9)?;
    let state = displaced_ground_state(&ground.state, [(0.7, 0.0), (0.7, 0.0)]);
    let periods = 3.0;
    let traj = evolve(&state, &params, &EvolutionConfig::new(1e-3, periods * 2.0 * PI / omega, 10))?;
    let com = traj.series(|o| o.center_of_mass());
    let fit = fit_sinusoid(&traj.times, &com, None).ok_or("fit failed")?;
    println!(
        "center-of-mass frequency {:.6} (trap {omega}), amplitude {:.4}, energy drift {:.1e}",
        fit.omega, fit.amplitude, traj.energy_drift
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
