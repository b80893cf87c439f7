//! Breathing frequency from the reduced model: 2 omega for an ideal gas,
//! approaching sqrt(3) omega in the Thomas-Fermi limit.

use std::error::Error;
use std::f64::consts::PI;

use gpe_duet::analysis::fit_sinusoid;
use gpe_duet::stability::{decoupled_width_frequencies, width_normal_modes};
use gpe_duet::variational::{equilibrium_widths, integrate, VariationalState};
use gpe_duet::Params;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("{:>8} {:>10} {:>10} {:>10}", "g N", "W_eq", "fitted", "analytic");
    for g_n in [0.0, 1.0, 10.0, 100.0, 1000.0] {
        let params = Params::new(g_n, g_n, 0.0, 1.0, 1.0, 1.0)?;
        let eq = equilibrium_widths(&params)?;
        let v0 = VariationalState::at_rest(0.0, 0.0, 1.01 * eq.w_alpha_eq, eq.w_beta_eq);
        let traj = integrate(&v0, &params, 2e-3, 6.0 * PI)?;
        let t: Vec<f64> = traj.iter().map(|(t, _)| *t).collect();
        let w: Vec<f64> = traj.iter().map(|(_, v)| v.w_alpha).collect();
        let fit = fit_sinusoid(&t, &w, None).ok_or("fit failed")?;
        let (analytic, _) = decoupled_width_frequencies(&params)?;
        println!("{g_n:>8} {:>10.5} {:>10.5} {:>10.5}", eq.w_alpha_eq, fit.omega, analytic.sqrt());
    }

    let coupled = Params::new(1.0, 2.0, 0.8, 1.0, 20.0, 10.0)?;
    let modes = width_normal_modes(&coupled, &equilibrium_widths(&coupled)?);
    let (plus, minus) = modes.frequencies();
    println!(
        "coupled widths: omega_+ = {:.5}, omega_- = {:.5}, stable = {}",
        plus.unwrap_or(f64::NAN),
        minus.unwrap_or(f64::NAN),
        modes.stable
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
