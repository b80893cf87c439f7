//! Analytic stability summary for one parameter point, as key-value text
//! and a CSV row.

use std::error::Error;

use gpe_duet::stability::{stability_report, StabilityReport, TFParams};
use gpe_duet::Params;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = Params::new(1.0, 1.2, 1.4, 1.0, 30.0, 20.0)?;
    let report = stability_report(&params)?;
    print!("{}", report.to_key_value());
    println!("{}", StabilityReport::csv_header());
    println!("{}", report.csv_row());
    let tf = TFParams::from_params(&params)?;
    println!("Thomas-Fermi: mu = {:.4}, xi = {:.4} (flag {})", tf.mu, tf.xi, tf.xi_flag());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
