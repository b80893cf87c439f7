use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::params::{Params, PARAM_NAMES};
use crate::solver::DEFAULT_DT;
use crate::variational::{CrossTerm, WidthClosure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Evolve,
    Ground,
    Variational,
    Stability,
    Sweep,
    VeffScan,
    Compare,
}

impl Mode {
    pub const ALL: [Mode; 7] = [
        Mode::Evolve,
        Mode::Ground,
        Mode::Variational,
        Mode::Stability,
        Mode::Sweep,
        Mode::VeffScan,
        Mode::Compare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Evolve => "evolve",
            Mode::Ground => "ground",
            Mode::Variational => "variational",
            Mode::Stability => "stability",
            Mode::Sweep => "sweep",
            Mode::VeffScan => "veff-scan",
            Mode::Compare => "compare",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Mode::ALL.iter().map(|m| m.name()).collect();
                format!("unknown mode `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// How the initial wavefunction is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialKind {
    /// Gaussians with the configured centers, momenta and widths.
    #[default]
    Gaussian,
    /// The imaginary-time ground state, displaced and boosted by the
    /// configured centers and momenta.
    Ground,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec {
    pub x0: f64,
    pub p0: f64,
    /// `None` uses the overlapped equilibrium width of the reduced model.
    pub width: Option<f64>,
}

impl Default for PacketSpec {
    fn default() -> Self {
        PacketSpec {
            x0: 0.0,
            p0: 0.0,
            width: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepSolver {
    /// Analytic stability report only.
    #[default]
    Stability,
    /// Stability report plus an imaginary-time ground state per point.
    Ground,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub solver: SweepSolver,
}

impl SweepSpec {
    /// Evenly spaced values from `start` to `stop` inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.start];
        }
        (0..self.steps)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            param: "g_alphabeta".into(),
            start: 0.0,
            stop: 1.0,
            steps: 5,
            solver: SweepSolver::default(),
        }
    }
}

/// A single experiment, fully defaulted and validated.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub params: Params,
    pub n_points: usize,
    pub half_length: f64,
    pub dt: f64,
    pub t_final: f64,
    pub record_every: usize,
    /// `gamma` of the damped step `dt (1 - i gamma)`; zero for pure real time.
    pub damping: f64,
    pub store_snapshots: bool,
    pub initial: InitialKind,
    pub alpha: PacketSpec,
    pub beta: PacketSpec,
    pub ground_tol: f64,
    pub ground_dtau: f64,
    pub sweep: SweepSpec,
    pub veff_values: Vec<f64>,
    pub veff_dx_max: f64,
    pub veff_points: usize,
    pub n_modes: usize,
    pub n_grid: usize,
    pub closure: WidthClosure,
    pub cross_term: CrossTerm,
    pub variational_dt: f64,
    pub prefix: String,
    pub literal_mode: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: Mode::Ground,
            params: Params::default(),
            n_points: 1024,
            half_length: 32.0,
            dt: DEFAULT_DT,
            t_final: 2.0 * std::f64::consts::PI,
            record_every: 10,
            damping: 0.0,
            store_snapshots: false,
            initial: InitialKind::default(),
            alpha: PacketSpec::default(),
            beta: PacketSpec::default(),
            ground_tol: 1e-10,
            ground_dtau: 1e-3,
            sweep: SweepSpec::default(),
            veff_values: Vec::new(),
            veff_dx_max: 6.0,
            veff_points: 241,
            n_modes: 5,
            n_grid: 1000,
            closure: WidthClosure::default(),
            cross_term: CrossTerm::default(),
            variational_dt: 1e-3,
            prefix: "gpe".into(),
            literal_mode: false,
        }
    }
}

fn parse_value<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Config {
        line,
        message: format!(
            "`{key}` expects {}, got `{value}`",
            std::any::type_name::<T>()
        ),
    })
}

fn parse_bool(line: usize, key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Config {
            line,
            message: format!("`{key}` expects a boolean, got `{value}`"),
        }),
    }
}

fn parse_list(line: usize, key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(line, key, s))
        .collect()
}

fn config_err(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        message: message.into(),
    }
}

/// Parses `key = value` lines. `#` starts a comment; blank lines are
/// ignored; later assignments override earlier ones.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut c = ExperimentConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| config_err(line, format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim().trim_matches('"'));
        let f = |v: &str| parse_value::<f64>(line, key, v);
        let u = |v: &str| parse_value::<usize>(line, key, v);
        match key {
            "mode" => c.mode = value.parse().map_err(|m| config_err(line, m))?,
            "literal_mode" => c.literal_mode = parse_bool(line, key, value)?,
            k if k.starts_with("params.") => {
                let name = &k["params.".len()..];
                if !PARAM_NAMES.contains(&name) {
                    return Err(Error::UnknownKey(key.into()));
                }
                let v = f(value)?;
                // Invariants are checked once every key is read.
                match name {
                    "g_alpha" => c.params.g_alpha = v,
                    "g_beta" => c.params.g_beta = v,
                    "g_alphabeta" => c.params.g_alphabeta = v,
                    "omega" => c.params.omega = v,
                    "n_alpha" => c.params.n_alpha = v,
                    _ => c.params.n_beta = v,
                }
            }
            "grid.n_points" => c.n_points = u(value)?,
            "grid.half_length" => c.half_length = f(value)?,
            "evolution.dt" => c.dt = f(value)?,
            "evolution.t_final" => c.t_final = f(value)?,
            "evolution.record_every" => c.record_every = u(value)?,
            "evolution.damping" => c.damping = f(value)?,
            "evolution.snapshots" => c.store_snapshots = parse_bool(line, key, value)?,
            "initial.kind" => {
                c.initial = match value {
                    "gaussian" => InitialKind::Gaussian,
                    "ground" => InitialKind::Ground,
                    _ => {
                        return Err(config_err(
                            line,
                            format!("`initial.kind` must be gaussian or ground, got `{value}`"),
                        ))
                    }
                }
            }
            "initial.alpha.x0" => c.alpha.x0 = f(value)?,
            "initial.alpha.p0" => c.alpha.p0 = f(value)?,
            "initial.alpha.width" => c.alpha.width = Some(f(value)?),
            "initial.beta.x0" => c.beta.x0 = f(value)?,
            "initial.beta.p0" => c.beta.p0 = f(value)?,
            "initial.beta.width" => c.beta.width = Some(f(value)?),
            "ground.tol" => c.ground_tol = f(value)?,
            "ground.dtau" => c.ground_dtau = f(value)?,
            "sweep.param" => {
                if !PARAM_NAMES.contains(&value) {
                    return Err(config_err(
                        line,
                        format!("unknown sweep parameter `{value}`"),
                    ));
                }
                c.sweep.param = value.into();
            }
            "sweep.start" => c.sweep.start = f(value)?,
            "sweep.stop" => c.sweep.stop = f(value)?,
            "sweep.steps" => c.sweep.steps = u(value)?,
            "sweep.solver" => {
                c.sweep.solver = match value {
                    "stability" => SweepSolver::Stability,
                    "ground" => SweepSolver::Ground,
                    _ => {
                        return Err(config_err(
                            line,
                            format!("`sweep.solver` must be stability or ground, got `{value}`"),
                        ))
                    }
                }
            }
            "veff.g_alphabeta" => c.veff_values = parse_list(line, key, value)?,
            "veff.dx_max" => c.veff_dx_max = f(value)?,
            "veff.points" => c.veff_points = u(value)?,
            "stability.n_modes" => c.n_modes = u(value)?,
            "stability.n_grid" => c.n_grid = u(value)?,
            "variational.closure" => {
                c.closure = match value {
                    "chirped" => WidthClosure::Chirped,
                    "printed" => WidthClosure::Printed,
                    _ => {
                        return Err(config_err(
                            line,
                            format!("`variational.closure` must be chirped or printed, got `{value}`"),
                        ))
                    }
                }
            }
            "variational.cross_term" => {
                c.cross_term = match value {
                    "printed" => CrossTerm::Printed,
                    "gradient" => CrossTerm::Gradient,
                    _ => {
                        return Err(config_err(
                            line,
                            format!("`variational.cross_term` must be printed or gradient, got `{value}`"),
                        ))
                    }
                }
            }
            "variational.dt" => c.variational_dt = f(value)?,
            "output.prefix" => {
                if value.is_empty() || value.contains(['/', '\\']) {
                    return Err(config_err(line, "`output.prefix` must be a plain file stem"));
                }
                c.prefix = value.into();
            }
            _ => return Err(Error::UnknownKey(key.into())),
        }
    }
    c.validate()?;
    Ok(c)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{name} = {v} must be positive")))
            }
        };
        positive("grid.half_length", self.half_length)?;
        positive("evolution.dt", self.dt)?;
        positive("evolution.t_final", self.t_final)?;
        positive("ground.tol", self.ground_tol)?;
        positive("ground.dtau", self.ground_dtau)?;
        positive("variational.dt", self.variational_dt)?;
        positive("veff.dx_max", self.veff_dx_max)?;
        if !(self.damping.is_finite() && self.damping >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "evolution.damping = {} must be non-negative",
                self.damping
            )));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParams("evolution.record_every must be positive".into()));
        }
        for w in [self.alpha.width, self.beta.width].into_iter().flatten() {
            positive("initial width", w)?;
        }
        if self.sweep.steps == 0 {
            return Err(Error::InvalidParams("sweep.steps must be positive".into()));
        }
        if !PARAM_NAMES.contains(&self.sweep.param.as_str()) {
            return Err(Error::UnknownKey(format!("sweep.param = {}", self.sweep.param)));
        }
        for v in &self.veff_values {
            if !(v.is_finite() && *v >= 0.0) {
                return Err(Error::InvalidParams(format!(
                    "veff.g_alphabeta entry {v} must be non-negative"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config("mode = ground\n").unwrap();
        assert_eq!(c.mode, Mode::Ground);
        assert_eq!(c.n_points, 1024);
        assert_eq!(c.half_length, 32.0);
        assert_eq!(c.dt, 1e-3);
        assert_eq!(c.params.omega, 1.0);
    }

    #[test]
    fn comments_and_dotted_keys() {
        let c = parse_config(
            "# header\nmode = sweep   # trailing\n\nparams.g_alphabeta = 1.2\nsweep.param = g_alpha\nveff.g_alphabeta = 0, 0.5, 2\n",
        )
        .unwrap();
        assert_eq!(c.params.g_alphabeta, 1.2);
        assert_eq!(c.sweep.param, "g_alpha");
        assert_eq!(c.veff_values, vec![0.0, 0.5, 2.0]);
    }

    #[test]
    fn rejects_attractive_coupling() {
        assert!(matches!(
            parse_config("params.g_alpha = -1"),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn rejects_unknown_sweep_parameter() {
        let err = parse_config("sweep.param = g_gamma").unwrap_err();
        assert!(err.to_string().contains("g_gamma"));
    }

    #[test]
    fn unknown_key_is_named() {
        assert_eq!(
            parse_config("grid.spacing = 2").unwrap_err(),
            Error::UnknownKey("grid.spacing".into())
        );
        assert_eq!(
            parse_config("params.g_gamma = 2").unwrap_err(),
            Error::UnknownKey("params.g_gamma".into())
        );
    }

    #[test]
    fn type_mismatch_reports_line() {
        let err = parse_config("mode = ground\ngrid.n_points = many").unwrap_err();
        assert!(matches!(err, Error::Config { line: 2, .. }), "{err}");
        assert!(parse_config("mode = relax").is_err());
        assert!(parse_config("just text").is_err());
    }

    #[test]
    fn sweep_values_are_inclusive() {
        let s = SweepSpec {
            start: 0.5,
            stop: 1.5,
            steps: 3,
            ..Default::default()
        };
        assert_eq!(s.values(), vec![0.5, 1.0, 1.5]);
    }
}
