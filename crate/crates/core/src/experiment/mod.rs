//! Configuration files and experiment orchestration behind the `gpe-duet`
//! binary.

mod config;
mod run;

pub use config::{
    parse_config, ExperimentConfig, InitialKind, Mode, PacketSpec, SweepSolver, SweepSpec,
};
pub use run::{
    compare_models, initial_state, initial_variational, run, CompareReport, RunOutput,
    COMPARE_HEADER,
};
