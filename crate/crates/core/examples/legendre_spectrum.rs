//! Thomas-Fermi excitation spectrum from the Legendre operator, and its
//! softening in an equal-coupling mixture.

use std::error::Error;

use gpe_duet::stability::{coupled_mode_scaling, legendre_spectrum_single};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let modes = legendre_spectrum_single(6, 400)?;
    println!("{:>3} {:>12} {:>12} {:>10}", "n", "analytic", "numeric", "mismatch");
    for m in &modes {
        println!(
            "{:>3} {:>12.8} {:>12.8} {:>10.2e}",
            m.n,
            m.epsilon_analytic,
            m.epsilon_numeric,
            m.mismatch()
        );
    }
    for c in [0.0, 0.5, 0.9, 1.0] {
        let row: Vec<String> = (1..=4)
            .map(|n| coupled_mode_scaling(c, n).map(|e| format!("{e:.4}")))
            .collect::<Result<_, _>>()?;
        println!("C = {c}: {}", row.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
