//! Parameter sweep across the miscibility threshold through the config
//! front end, with a ground state at every point.

use std::error::Error;

use gpe_duet::experiment::{parse_config, run};

const CONFIG: &str = "
mode = sweep
params.g_alpha = 1
params.g_beta = 1
params.n_alpha = 50
params.n_beta = 50
grid.n_points = 256
grid.half_length = 16
ground.tol = 1e-8
sweep.param = g_alphabeta
sweep.start = 0.6
sweep.stop = 1.4
sweep.steps = 5
sweep.solver = ground
output.prefix = misc
";

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let config = parse_config(CONFIG)?;
    let dir = std::env::temp_dir().join("gpe-duet-miscibility-sweep");
    let out = run(&config, &dir)?;
    let csv = std::fs::read_to_string(&out.files[0])?;
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().ok_or("empty csv")?.split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).ok_or("missing column");
    let (g, sep, overlap) = (col("sweep_g_alphabeta")?, col("separated")?, col("overlap_fraction")?);
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        println!("g_ab = {:<8} criterion separated = {:<5} overlap = {}", f[g], f[sep], f[overlap]);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
