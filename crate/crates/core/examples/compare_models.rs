//! Gaussian reduced model against the full coupled GPE from the same
//! initial packets.

use std::error::Error;
use std::f64::consts::PI;

use gpe_duet::experiment::{compare_models, ExperimentConfig, Mode, PacketSpec};
use gpe_duet::variational::CrossTerm;
use gpe_duet::Params;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let base = ExperimentConfig {
        mode: Mode::Compare,
        params: Params::new(0.5, 0.5, 0.2, 1.0, 1.0, 1.0)?,
        n_points: 256,
        half_length: 12.0,
        t_final: PI,
        alpha: PacketSpec { x0: 1.0, p0: 0.0, width: Some(0.85) },
        beta: PacketSpec { x0: -0.5, p0: 0.0, width: Some(0.85) },
        ..Default::default()
    };
    for cross in [CrossTerm::Printed, CrossTerm::Gradient] {
        let report = compare_models(&ExperimentConfig { cross_term: cross, ..base.clone() })?;
        println!("{cross:?} cross term:");
        print!("{}", report.summary());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
