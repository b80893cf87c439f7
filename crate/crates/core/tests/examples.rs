//! Runs every example end to end.

#[allow(dead_code)]
#[path = "../examples/breathing_modes.rs"]
mod breathing_modes;

#[test]
fn breathing_modes_runs() {
    breathing_modes::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/coherent_state.rs"]
mod coherent_state;

#[test]
fn coherent_state_runs() {
    coherent_state::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/compare_models.rs"]
mod compare_models;

#[test]
fn compare_models_runs() {
    compare_models::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/effective_potential.rs"]
mod effective_potential;

#[test]
fn effective_potential_runs() {
    effective_potential::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/ground_state.rs"]
mod ground_state;

#[test]
fn ground_state_runs() {
    ground_state::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/kohn_mode.rs"]
mod kohn_mode;

#[test]
fn kohn_mode_runs() {
    kohn_mode::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/legendre_spectrum.rs"]
mod legendre_spectrum;

#[test]
fn legendre_spectrum_runs() {
    legendre_spectrum::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/miscibility_sweep.rs"]
mod miscibility_sweep;

#[test]
fn miscibility_sweep_runs() {
    miscibility_sweep::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/stability_report.rs"]
mod stability_report;

#[test]
fn stability_report_runs() {
    stability_report::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/variational_dynamics.rs"]
mod variational_dynamics;

#[test]
fn variational_dynamics_runs() {
    variational_dynamics::run_example().unwrap();
}
