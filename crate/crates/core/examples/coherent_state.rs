//! A rigidly displaced interacting ground state keeps its shape while it
//! oscillates; a mistuned Gaussian does not.

use std::error::Error;
use std::f64::consts::PI;
use std::sync::Arc;

use gpe_duet::solver::{
    displaced_ground_state, evolve, ground_state_imaginary_time, shape_deformation, EvolutionConfig,
};
use gpe_duet::{make_grid, Packet, Params, TwoComponentState};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let grid = Arc::new(make_grid(256, 12.0)?);
    let params = Params::new(1.0, 1.0, 0.5, 1.0, 10.0, 10.0)?;
    let ground = ground_state_imaginary_time(&params, grid.clone(), 1e-9)?;
    let config = EvolutionConfig::new(1e-3, 2.0 * PI, 100).storing_states();

    let coherent = displaced_ground_state(&ground.state, [(1.5, 0.0), (1.5, 0.0)]);
    let traj = evolve(&coherent, &params, &config)?;
    println!("displaced ground state: D = {:.2e}", shape_deformation(&traj.states, &ground.state));

    let gaussian = TwoComponentState::gaussians(
        grid,
        &params,
        Packet::at_rest(1.5, 1.0),
        Packet::at_rest(1.5, 1.0),
    )?;
    let traj = evolve(&gaussian, &params, &config)?;
    println!("breathing Gaussian:     D = {:.2e}", shape_deformation(&traj.states, &gaussian));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
