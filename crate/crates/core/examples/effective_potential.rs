//! The effective potential of the relative coordinate turns from a single
//! harmonic well into a double well as g_ab crosses its threshold.

use std::error::Error;

use gpe_duet::stability::center_stability;
use gpe_duet::variational::{equilibrium_widths, veff_scan};
use gpe_duet::Params;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let base = Params::new(1.0, 1.0, 0.0, 1.0, 10.0, 10.0)?;
    let w = equilibrium_widths(&base)?.total_width();
    let threshold = center_stability(&base, w).threshold_eigenvalue;
    println!("W = {w:.4}, threshold g_ab = {threshold:.4}");
    for factor in [0.0, 0.5, 1.0, 1.5, 3.0] {
        let params = base.with("g_alphabeta", factor * threshold)?;
        let report = center_stability(&params, w);
        let curve = veff_scan(&params, w, 3.0 * w, 13);
        let sketch: Vec<String> = curve.iter().map(|(_, v)| format!("{v:6.2}")).collect();
        println!(
            "{factor:>4} x threshold: V''(0) = {:+.4}, separation {:.4} | {}",
            report.veff_curvature,
            report.separation.unwrap_or(0.0),
            sketch.join(" ")
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
