use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use gpe_duet::experiment::{parse_config, run};
use gpe_duet::selftest::run_selftest;

/// Run one two-component condensate experiment described by a config file.
#[derive(Parser, Debug)]
#[command(name = "gpe-duet", version)]
struct Cli {
    /// Path to a `key = value` experiment config.
    config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Use the width-equation bracket of the beta species as printed.
    #[arg(long)]
    literal: bool,

    /// Run the built-in invariant checks and exit.
    #[arg(long)]
    selftest: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.selftest {
        let checks = run_selftest();
        let mut ok = true;
        let mut out = std::io::stdout().lock();
        for c in &checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {}: {}", c.name, c.detail);
            ok &= c.passed;
        }
        return if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE };
    }
    let Some(path) = cli.config else {
        eprintln!("gpe-duet: a config path is required (see --help)");
        return ExitCode::from(2);
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("gpe-duet: cannot read {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    };
    let mut config = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("gpe-duet: {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    };
    config.literal_mode |= cli.literal;
    match run(&config, &cli.out) {
        Ok(result) => {
            let mut out = std::io::stdout().lock();
            let _ = write!(out, "{}", result.summary);
            for f in &result.files {
                let _ = writeln!(out, "wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gpe-duet: {} run failed: {e}", config.mode);
            ExitCode::FAILURE
        }
    }
}
