//! Split-step pseudospectral integration of the coupled GPE.
//!
//! `i d/dt psi_a = (-1/2 d^2/dx^2 + omega^2 x^2/2 + g_a |psi_a|^2 + g_ab |psi_b|^2) psi_a`
//! and the `a <-> b` image, on a periodic grid.

mod evolve;
mod ground;
mod propagator;
mod shape;

pub use evolve::{
    evolve, evolve_damped, EvolutionConfig, Trajectory, DEFAULT_DT, ENERGY_DRIFT_TOLERANCE,
};
pub use ground::{
    displaced_ground_state, ground_state_imaginary_time, ground_state_with, initial_guess,
    relax_from, GroundState, GroundStateOptions,
};
pub use propagator::{step_real_time, Propagator, BLOW_UP_AMPLITUDE};
pub use shape::{shape_deformation, shape_deformation_series};

use std::io::Write;

use crate::error::Result;

/// Header of the observables time series CSV.
pub const OBSERVABLES_HEADER: &str = "t,norm_a,norm_b,center_a,center_b,width_a,width_b,energy,overlap";

/// Header of the wavefunction snapshot CSV.
pub const SNAPSHOT_HEADER: &str = "t,x,re_psi_alpha,im_psi_alpha,re_psi_beta,im_psi_beta";

pub fn write_observables_csv<W: Write>(out: &mut W, traj: &Trajectory) -> Result<()> {
    writeln!(out, "{OBSERVABLES_HEADER}")?;
    for (t, o) in traj.times.iter().zip(&traj.snapshots) {
        writeln!(
            out,
            "{t},{},{},{},{},{},{},{},{}",
            o.norm_alpha,
            o.norm_beta,
            o.center_alpha,
            o.center_beta,
            o.width_alpha,
            o.width_beta,
            o.energy,
            o.overlap_fraction
        )?;
    }
    Ok(())
}

/// One block of rows per stored state; `times` pairs with `traj.states`.
pub fn write_snapshots_csv<W: Write>(
    out: &mut W,
    times: &[f64],
    states: &[crate::state::TwoComponentState],
) -> Result<()> {
    writeln!(out, "{SNAPSHOT_HEADER}")?;
    for (t, s) in times.iter().zip(states) {
        for ((x, a), b) in s.grid().points().iter().zip(&s.psi_alpha).zip(&s.psi_beta) {
            writeln!(out, "{t},{x},{},{},{},{}", a.re, a.im, b.re, b.im)?;
        }
    }
    Ok(())
}
