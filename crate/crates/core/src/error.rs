use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("packet support clipped by the box: norm deficit {deficit:.3e}")]
    ClippedPacket { deficit: f64 },

    #[error("state not normalized: component {component} has norm {actual} (expected {expected})")]
    NotNormalized {
        component: &'static str,
        actual: f64,
        expected: f64,
    },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("blow-up detected at t = {time}: {reason}")]
    BlowUp { time: f64, reason: String },

    #[error("time step {dt} violates dt*k_max^2/2 < pi (k_max = {k_max})")]
    TimeStepTooLarge { dt: f64, k_max: f64 },

    #[error("no convergence after {iterations} iterations (last change {last_change:.3e})")]
    NoConvergence { iterations: usize, last_change: f64 },

    #[error("width collapsed (W <= 0) at t = {time}")]
    WidthCollapse { time: f64 },

    #[error("discretization too coarse: mode {mode} mismatch {mismatch:.3e}")]
    CoarseDiscretization { mode: usize, mismatch: f64 },

    #[error("config error on line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
