//! Quick invariant checks run by `gpe-duet --selftest`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::Result;
use crate::grid::make_grid;
use crate::params::Params;
use crate::solver::{evolve, EvolutionConfig, Propagator};
use crate::stability::{
    center_stability, coupled_mode_scaling, legendre_spectrum_single, normal_modes,
};
use crate::state::{Packet, TwoComponentState};
use crate::variational::{ehrenfest_rhs, equilibrium_widths, VariationalState};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, result: Result<(bool, String)>) -> Check {
    match result {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Runs every check; the suite passed when all entries did.
pub fn run_selftest() -> Vec<Check> {
    vec![
        check("legendre_low_modes", legendre_low_modes()),
        check("coupled_scaling_limits", coupled_scaling_limits()),
        check("normal_mode_identities", normal_mode_identities()),
        check("center_eigenvalue_identities", center_identities()),
        check("ideal_variational_fixed_point", ideal_fixed_point()),
        check("norm_conservation", norm_conservation()),
        check("time_reversal", time_reversal()),
    ]
}

fn legendre_low_modes() -> Result<(bool, String)> {
    let modes = legendre_spectrum_single(3, 200)?;
    let worst = modes.iter().map(|m| m.mismatch()).fold(0.0, f64::max);
    Ok((worst < 1e-6, format!("max mismatch {worst:.2e}")))
}

fn coupled_scaling_limits() -> Result<(bool, String)> {
    let zero = coupled_mode_scaling(0.0, 2)? == 3f64.sqrt();
    let one = coupled_mode_scaling(1.0, 3)? == 0.0;
    let mid = (coupled_mode_scaling(0.6, 1)? - 0.8).abs() < 1e-15;
    Ok((zero && one && mid, format!("c=0: {zero}, c=1: {one}, c=0.6: {mid}")))
}

fn normal_mode_identities() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for &(a1, a2, b1, b2) in &[(4.0, 0.3, 5.0, 0.7), (3.1, 1.2, 3.1, 1.2), (10.0, 2.0, 0.5, 0.1)] {
        let m = normal_modes(a1, a2, b1, b2);
        worst = worst
            .max((m.omega_plus_sq + m.omega_minus_sq - a1 - b1).abs())
            .max((m.omega_plus_sq * m.omega_minus_sq - m.determinant()).abs());
    }
    Ok((worst < 1e-12, format!("max identity residual {worst:.2e}")))
}

fn center_identities() -> Result<(bool, String)> {
    let p = Params::new(1.0, 1.0, 1.0, 1.3, 10.0, 20.0)?;
    let w = equilibrium_widths(&p)?.total_width();
    let r = center_stability(&p, w);
    let om2 = p.omega * p.omega;
    let minus = (r.lambda_minus + om2).abs();
    let curvature = (r.veff_curvature + r.lambda_plus).abs();
    Ok((
        minus < 1e-12 && curvature < 1e-12,
        format!("|lambda_- + omega^2| = {minus:.2e}, |V'' + lambda_+| = {curvature:.2e}"),
    ))
}

fn ideal_fixed_point() -> Result<(bool, String)> {
    let p = Params::ideal(1.0)?;
    let w = (0.5f64).sqrt();
    let d = ehrenfest_rhs(&VariationalState::at_rest(0.0, 0.0, w, w), &p, false)?;
    let worst = d.to_array().iter().map(|x| x.abs()).fold(0.0, f64::max);
    Ok((worst < 1e-14, format!("max derivative {worst:.2e}")))
}

fn small_state(params: &Params) -> Result<TwoComponentState> {
    let grid = Arc::new(make_grid(256, 16.0)?);
    TwoComponentState::gaussians(
        grid,
        params,
        Packet::new(1.0, 0.5, 0.8),
        Packet::new(-0.5, 0.0, 1.0),
    )
}

fn norm_conservation() -> Result<(bool, String)> {
    let p = Params::new(1.0, 0.8, 0.5, 1.0, 2.0, 3.0)?;
    let state = small_state(&p)?;
    let traj = evolve(&state, &p, &EvolutionConfig::new(1e-3, 1.0, 100))?;
    let drift = traj
        .snapshots
        .iter()
        .map(|o| ((o.norm_alpha - 2.0) / 2.0).abs().max(((o.norm_beta - 3.0) / 3.0).abs()))
        .fold(0.0, f64::max);
    Ok((drift < 1e-9, format!("max relative norm drift {drift:.2e}")))
}

fn time_reversal() -> Result<(bool, String)> {
    let p = Params::new(1.0, 0.8, 0.5, 1.0, 2.0, 3.0)?;
    let state = small_state(&p)?;
    let dt = 1e-3;
    let steps = 500;
    let mut s = state.clone();
    let mut fwd = Propagator::real_time(s.grid().clone(), p, dt);
    for i in 0..steps {
        fwd.step(&mut s, i as f64 * dt)?;
    }
    let mut back = Propagator::real_time(s.grid().clone(), p, -dt);
    for i in 0..steps {
        back.step(&mut s, (steps - i) as f64 * dt)?;
    }
    let err = s.l2_distance(&state);
    Ok((err < 1e-8, format!("round-trip L2 error {err:.2e} after {} periods", steps as f64 * dt / (2.0 * PI))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes() {
        for c in run_selftest() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
