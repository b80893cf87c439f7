//! Reduced-model trajectory of two packets released apart, written as CSV.

use std::error::Error;

use gpe_duet::variational::{
    equilibrium_widths, integrate_with, write_trajectory_csv, ModelOptions, VariationalState,
};
use gpe_duet::Params;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = Params::new(1.0, 1.0, 0.8, 1.0, 10.0, 10.0)?;
    let eq = equilibrium_widths(&params)?;
    let v0 = VariationalState::at_rest(1.0, -1.0, eq.w_alpha_eq, eq.w_beta_eq);
    let traj = integrate_with(&v0, &params, 1e-3, 10.0, &ModelOptions::default(), 500)?;
    let mut out = Vec::new();
    write_trajectory_csv(&mut out, &traj)?;
    print!("{}", String::from_utf8(out)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
