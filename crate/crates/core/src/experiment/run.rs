use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;

use crate::analysis::fit_sinusoid;
use crate::error::{Error, Result};
use crate::grid::{make_grid, Grid};
use crate::observables::{observables, Observables};
use crate::params::Params;
use crate::solver::{
    displaced_ground_state, evolve, evolve_damped, ground_state_with, write_observables_csv,
    write_snapshots_csv, EvolutionConfig, GroundState, GroundStateOptions, Trajectory,
};
use crate::stability::{
    center_stability, coupled_mode_scaling, legendre_spectrum_single, miscibility_criterion,
    stability_report, StabilityReport, TFParams,
};
use crate::state::{Packet, TwoComponentState};
use crate::variational::{
    equilibrium_widths, integrate_with, veff_scan, write_trajectory_csv, write_veff_csv,
    ModelOptions, VariationalState,
};

use super::config::{ExperimentConfig, InitialKind, Mode, SweepSolver};

/// Files written by [`run`] and a human-readable summary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

/// Named file contents, written only after every computation succeeded.
#[derive(Default)]
struct Emit {
    files: Vec<(String, String)>,
}

impl Emit {
    fn add(&mut self, name: String, content: String) {
        self.files.push((name, content));
    }

    fn add_with(&mut self, name: String, f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
        let mut buf = Vec::new();
        f(&mut buf)?;
        let text = String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))?;
        self.add(name, text);
        Ok(())
    }

    fn write(self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for (name, content) in self.files {
            let path = dir.join(name);
            if let Err(e) = fs::write(&path, content) {
                for p in &written {
                    let _ = fs::remove_file(p);
                }
                let _ = fs::remove_file(&path);
                return Err(e.into());
            }
            written.push(path);
        }
        Ok(written)
    }
}

pub(crate) fn build_grid(config: &ExperimentConfig) -> Result<Arc<Grid>> {
    Ok(Arc::new(make_grid(config.n_points, config.half_length)?))
}

/// Packet widths, falling back to the reduced model's overlapped
/// equilibrium widths.
pub(crate) fn packet_widths(config: &ExperimentConfig) -> Result<(f64, f64)> {
    let eq = match (config.alpha.width, config.beta.width) {
        (Some(a), Some(b)) => return Ok((a, b)),
        _ => equilibrium_widths(&config.params)?,
    };
    Ok((
        config.alpha.width.unwrap_or(eq.w_alpha_eq),
        config.beta.width.unwrap_or(eq.w_beta_eq),
    ))
}

fn ground_options(config: &ExperimentConfig) -> GroundStateOptions {
    GroundStateOptions {
        dtau: config.ground_dtau,
        coarse_dtau: Some(10.0 * config.ground_dtau),
        ..Default::default()
    }
}

fn relax(params: &Params, grid: Arc<Grid>, config: &ExperimentConfig) -> Result<GroundState> {
    ground_state_with(params, grid, config.ground_tol, &ground_options(config))
}

/// Initial two-component state described by the config.
pub fn initial_state(config: &ExperimentConfig, grid: Arc<Grid>) -> Result<TwoComponentState> {
    let (a, b) = (config.alpha, config.beta);
    match config.initial {
        InitialKind::Gaussian => {
            let (wa, wb) = packet_widths(config)?;
            TwoComponentState::gaussians(
                grid,
                &config.params,
                Packet::new(a.x0, a.p0, wa),
                Packet::new(b.x0, b.p0, wb),
            )
        }
        InitialKind::Ground => {
            let ground = relax(&config.params, grid, config)?;
            Ok(displaced_ground_state(
                &ground.state,
                [(a.x0, a.p0), (b.x0, b.p0)],
            ))
        }
    }
}

/// Reduced-model phase point matching the Gaussian initial condition.
pub fn initial_variational(config: &ExperimentConfig) -> Result<VariationalState> {
    let (wa, wb) = packet_widths(config)?;
    Ok(VariationalState {
        x0_alpha: config.alpha.x0,
        p0_alpha: config.alpha.p0,
        x0_beta: config.beta.x0,
        p0_beta: config.beta.p0,
        w_alpha: wa,
        v_alpha: 0.0,
        w_beta: wb,
        v_beta: 0.0,
    })
}

fn model_options(config: &ExperimentConfig) -> ModelOptions {
    ModelOptions {
        literal_mode: config.literal_mode,
        closure: config.closure,
        cross: config.cross_term,
    }
}

fn evolution(config: &ExperimentConfig) -> EvolutionConfig {
    EvolutionConfig {
        store_states: config.store_snapshots,
        ..EvolutionConfig::new(config.dt, config.t_final, config.record_every)
    }
}

/// Runs the configured experiment and writes its outputs to `out_dir`.
/// Nothing is written when any step fails.
pub fn run(config: &ExperimentConfig, out_dir: &Path) -> Result<RunOutput> {
    config.validate()?;
    let mut emit = Emit::default();
    let summary = match config.mode {
        Mode::Evolve => run_evolve(config, &mut emit)?,
        Mode::Ground => run_ground(config, &mut emit)?,
        Mode::Variational => run_variational(config, &mut emit)?,
        Mode::Stability => run_stability(config, &mut emit)?,
        Mode::Sweep => run_sweep(config, &mut emit)?,
        Mode::VeffScan => run_veff_scan(config, &mut emit)?,
        Mode::Compare => run_compare(config, &mut emit)?,
    };
    let files = emit.write(out_dir)?;
    Ok(RunOutput { files, summary })
}

fn observables_lines(o: &Observables) -> String {
    format!(
        "norm_alpha = {:e}\nnorm_beta = {:e}\ncenter_alpha = {:e}\ncenter_beta = {:e}\n\
         width_alpha = {:e}\nwidth_beta = {:e}\nenergy = {:e}\noverlap_fraction = {:e}\n",
        o.norm_alpha,
        o.norm_beta,
        o.center_alpha,
        o.center_beta,
        o.width_alpha,
        o.width_beta,
        o.energy,
        o.overlap_fraction
    )
}

fn run_evolve(config: &ExperimentConfig, emit: &mut Emit) -> Result<String> {
    let grid = build_grid(config)?;
    let state = initial_state(config, grid)?;
    let evo = evolution(config);
    let traj = if config.damping > 0.0 {
        evolve_damped(&state, &config.params, &evo, config.damping)?
    } else {
        evolve(&state, &config.params, &evo)?
    };
    let p = &config.prefix;
    emit.add_with(format!("{p}_observables.csv"), |w| write_observables_csv(w, &traj))?;
    if config.store_snapshots {
        emit.add_with(format!("{p}_snapshots.csv"), |w| {
            write_snapshots_csv(w, &traj.times, &traj.states)
        })?;
    }
    let summary = evolve_summary(&traj);
    emit.add(format!("{p}_summary.txt"), summary.clone());
    Ok(summary)
}

fn evolve_summary(traj: &Trajectory) -> String {
    let mut s = String::new();
    let last = traj.snapshots.last().expect("trajectory records t = 0");
    let _ = writeln!(s, "t_final = {:e}", traj.times.last().copied().unwrap_or(0.0));
    let _ = writeln!(s, "records = {}", traj.len());
    let _ = writeln!(s, "energy_drift = {:e}", traj.energy_drift);
    let _ = writeln!(s, "energy_drift_flagged = {}", traj.drift_flagged);
    s.push_str(&observables_lines(last));
    s
}

fn run_ground(config: &ExperimentConfig, emit: &mut Emit) -> Result<String> {
    let grid = build_grid(config)?;
    let ground = relax(&config.params, grid, config)?;
    let obs = observables(&ground.state, &config.params)?;
    let (separated, margin) = miscibility_criterion(&config.params);
    let mut s = String::new();
    let _ = writeln!(s, "mu_alpha = {:e}", ground.mu_alpha);
    let _ = writeln!(s, "mu_beta = {:e}", ground.mu_beta);
    let _ = writeln!(s, "steps = {}", ground.steps);
    let _ = writeln!(s, "last_change = {:e}", ground.last_change);
    let _ = writeln!(s, "separated_predicted = {separated}");
    let _ = writeln!(s, "miscibility_margin = {margin:e}");
    s.push_str(&observables_lines(&obs));
    let p = &config.prefix;
    emit.add_with(format!("{p}_ground.csv"), |w| {
        write_snapshots_csv(w, &[0.0], std::slice::from_ref(&ground.state))
    })?;
    emit.add(format!("{p}_ground.txt"), s.clone());
    Ok(s)
}

fn run_variational(config: &ExperimentConfig, emit: &mut Emit) -> Result<String> {
    let v0 = initial_variational(config)?;
    let traj = integrate_with(
        &v0,
        &config.params,
        config.variational_dt,
        config.t_final,
        &model_options(config),
        config.record_every,
    )?;
    let p = &config.prefix;
    emit.add_with(format!("{p}_variational.csv"), |w| write_trajectory_csv(w, &traj))?;
    let (t, last) = traj.last().copied().expect("integration records t = 0");
    Ok(format!(
        "t_final = {t:e}\nx0_alpha = {:e}\nx0_beta = {:e}\nw_alpha = {:e}\nw_beta = {:e}\n",
        last.x0_alpha, last.x0_beta, last.w_alpha, last.w_beta
    ))
}

/// `n,epsilon_analytic,epsilon_numeric,epsilon_coupled`; the coupled column
/// is `nan` unless `g_a = g_b` and `g_ab <= g_a`.
fn legendre_csv(config: &ExperimentConfig) -> Result<String> {
    let modes = legendre_spectrum_single(config.n_modes, config.n_grid)?;
    let p = &config.params;
    let c = (p.g_alpha == p.g_beta && p.g_alpha > 0.0).then(|| p.g_alphabeta / p.g_alpha);
    let mut s = String::from("n,epsilon_analytic,epsilon_numeric,epsilon_coupled\n");
    for m in modes {
        let coupled = c
            .and_then(|c| coupled_mode_scaling(c, m.n).ok())
            .unwrap_or(f64::NAN);
        let _ = writeln!(
            s,
            "{},{:e},{:e},{:e}",
            m.n, m.epsilon_analytic, m.epsilon_numeric, coupled
        );
    }
    Ok(s)
}

fn run_stability(config: &ExperimentConfig, emit: &mut Emit) -> Result<String> {
    let report = stability_report(&config.params)?;
    let mut text = report.to_key_value();
    if let Ok(tf) = TFParams::from_params(&config.params) {
        let _ = writeln!(text, "tf_mu = {:e}", tf.mu);
        let _ = writeln!(text, "tf_xi = {:e}", tf.xi);
        let _ = writeln!(text, "tf_xi_flag = {}", tf.xi_flag());
        let _ = writeln!(text, "tf_nbar_alpha = {:e}", tf.nbar_alpha);
        let _ = writeln!(text, "tf_nbar_beta = {:e}", tf.nbar_beta);
        let _ = writeln!(text, "tf_c_alpha = {:e}", tf.c_alpha);
        let _ = writeln!(text, "tf_c_beta = {:e}", tf.c_beta);
    }
    let legendre = legendre_csv(config)?;
    let p = &config.prefix;
    emit.add(format!("{p}_stability.txt"), text.clone());
    emit.add(
        format!("{p}_stability.csv"),
        format!("{}\n{}\n", StabilityReport::csv_header(), report.csv_row()),
    );
    emit.add(format!("{p}_legendre.csv"), legendre);
    Ok(text)
}

/// Ground-state columns appended to sweep rows.
const SWEEP_GROUND_HEADER: &str = "overlap_fraction,separation_pde,mu_alpha,mu_beta";

fn run_sweep(config: &ExperimentConfig, emit: &mut Emit) -> Result<String> {
    let values = config.sweep.values();
    let grid = match config.sweep.solver {
        SweepSolver::Ground => Some(build_grid(config)?),
        SweepSolver::Stability => None,
    };
    let name = config.sweep.param.as_str();
    let rows: Vec<String> = values
        .par_iter()
        .map(|&v| -> Result<String> {
            let params = config.params.with(name, v)?;
            let report = stability_report(&params)?;
            let mut row = format!("{v:e},{}", report.csv_row());
            if let Some(grid) = &grid {
                let ground = relax(&params, grid.clone(), config)?;
                let o = observables(&ground.state, &params)?;
                let _ = write!(
                    row,
                    ",{:e},{:e},{:e},{:e}",
                    o.overlap_fraction,
                    o.separation(),
                    ground.mu_alpha,
                    ground.mu_beta
                );
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut csv = format!("sweep_{name},{}", StabilityReport::csv_header());
    if grid.is_some() {
        let _ = write!(csv, ",{SWEEP_GROUND_HEADER}");
    }
    csv.push('\n');
    for r in &rows {
        csv.push_str(r);
        csv.push('\n');
    }
    emit.add(format!("{}_sweep.csv", config.prefix), csv);
    Ok(format!("sweep over {name}: {} points\n", rows.len()))
}

/// Local minima of a sampled curve, excluding the endpoints.
fn interior_minima(curve: &[(f64, f64)]) -> Vec<f64> {
    curve
        .windows(3)
        .filter(|w| w[1].1 < w[0].1 && w[1].1 < w[2].1)
        .map(|w| w[1].0)
        .collect()
}

fn run_veff_scan(config: &ExperimentConfig, emit: &mut Emit) -> Result<String> {
    let w = equilibrium_widths(&config.params)?.total_width();
    let values = if config.veff_values.is_empty() {
        let threshold = center_stability(&config.params, w).threshold_eigenvalue;
        vec![0.0, 0.5 * threshold, 2.0 * threshold]
    } else {
        config.veff_values.clone()
    };
    let mut summary = String::from("index,g_alphabeta,width,veff_curvature,double_well,separation,interior_minima\n");
    for (i, &g) in values.iter().enumerate() {
        let params = config.params.with("g_alphabeta", g)?;
        let scan = veff_scan(&params, w, config.veff_dx_max, config.veff_points);
        let report = center_stability(&params, w);
        let _ = writeln!(
            summary,
            "{i},{g:e},{w:e},{:e},{},{:e},{}",
            report.veff_curvature,
            report.double_well,
            report.separation.unwrap_or(0.0),
            interior_minima(&scan).len()
        );
        emit.add_with(format!("{}_veff_{i}.csv", config.prefix), |out| write_veff_csv(out, &scan))?;
    }
    emit.add(format!("{}_veff_summary.csv", config.prefix), summary.clone());
    Ok(summary)
}

/// Aligned solver and reduced-model time series with deviation metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub times: Vec<f64>,
    /// `[center_a, center_b, width_a, width_b]` from the PDE.
    pub pde: Vec<[f64; 4]>,
    /// The same columns from the reduced model.
    pub reduced: Vec<[f64; 4]>,
    pub max_center_deviation: f64,
    /// `max_center_deviation` over the largest PDE center excursion.
    pub max_center_deviation_rel: f64,
    /// Largest `|W_reduced - W_pde| / W_pde`.
    pub max_width_deviation_rel: f64,
    /// Reduced over PDE fitted frequency of the center-of-mass motion.
    pub center_frequency_ratio: Option<f64>,
    /// Reduced over PDE fitted frequency of the alpha width.
    pub width_frequency_ratio: Option<f64>,
}

pub const COMPARE_HEADER: &str =
    "t,center_a_pde,center_b_pde,width_a_pde,width_b_pde,center_a_var,center_b_var,width_a_var,width_b_var";

impl CompareReport {
    pub fn to_csv(&self) -> String {
        let mut s = format!("{COMPARE_HEADER}\n");
        for ((t, p), r) in self.times.iter().zip(&self.pde).zip(&self.reduced) {
            let _ = writeln!(
                s,
                "{t:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                p[0], p[1], p[2], p[3], r[0], r[1], r[2], r[3]
            );
        }
        s
    }

    pub fn summary(&self) -> String {
        let opt = |x: Option<f64>| x.map_or("nan".to_string(), |v| format!("{v:e}"));
        format!(
            "max_center_deviation = {:e}\nmax_center_deviation_rel = {:e}\n\
             max_width_deviation_rel = {:e}\ncenter_frequency_ratio = {}\nwidth_frequency_ratio = {}\n",
            self.max_center_deviation,
            self.max_center_deviation_rel,
            self.max_width_deviation_rel,
            opt(self.center_frequency_ratio),
            opt(self.width_frequency_ratio)
        )
    }
}

/// Fitted frequency of a series, `None` when it barely moves.
fn fitted_frequency(times: &[f64], values: &[f64]) -> Option<f64> {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if (hi - lo).is_nan() || hi - lo <= 1e-8 * hi.abs().max(1.0) {
        return None;
    }
    fit_sinusoid(times, values, None).map(|f| f.omega)
}

/// Runs the PDE and the reduced model from the same Gaussian packets on a
/// shared time base (`evolution.dt`, `evolution.record_every`).
pub fn compare_models(config: &ExperimentConfig) -> Result<CompareReport> {
    config.validate()?;
    let grid = build_grid(config)?;
    let gaussian = ExperimentConfig {
        initial: InitialKind::Gaussian,
        ..config.clone()
    };
    let state = initial_state(&gaussian, grid)?;
    let evo = EvolutionConfig::new(config.dt, config.t_final, config.record_every);
    let traj = evolve(&state, &config.params, &evo)?;
    let v0 = initial_variational(config)?;
    let reduced_traj = integrate_with(
        &v0,
        &config.params,
        config.dt,
        config.t_final,
        &model_options(config),
        config.record_every,
    )?;
    let pde: Vec<[f64; 4]> = traj
        .snapshots
        .iter()
        .map(|o| [o.center_alpha, o.center_beta, o.width_alpha, o.width_beta])
        .collect();
    let reduced: Vec<[f64; 4]> = reduced_traj
        .iter()
        .map(|(_, v)| [v.x0_alpha, v.x0_beta, v.w_alpha, v.w_beta])
        .collect();
    let n = pde.len().min(reduced.len());
    let times = traj.times[..n].to_vec();
    let (pde, reduced) = (pde[..n].to_vec(), reduced[..n].to_vec());

    let mut max_center = 0.0f64;
    let mut excursion = 0.0f64;
    let mut max_width = 0.0f64;
    for (p, r) in pde.iter().zip(&reduced) {
        for k in 0..2 {
            max_center = max_center.max((p[k] - r[k]).abs());
            excursion = excursion.max(p[k].abs());
            max_width = max_width.max((p[k + 2] - r[k + 2]).abs() / p[k + 2]);
        }
    }
    let (na, nb) = (config.params.n_alpha, config.params.n_beta);
    let com = |rows: &[[f64; 4]]| -> Vec<f64> {
        rows.iter().map(|r| (na * r[0] + nb * r[1]) / (na + nb)).collect()
    };
    let col = |rows: &[[f64; 4]], k: usize| -> Vec<f64> { rows.iter().map(|r| r[k]).collect() };
    let ratio = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(r), Some(p)) => Some(r / p),
        _ => None,
    };
    Ok(CompareReport {
        center_frequency_ratio: ratio(
            fitted_frequency(&times, &com(&reduced)),
            fitted_frequency(&times, &com(&pde)),
        ),
        width_frequency_ratio: ratio(
            fitted_frequency(&times, &col(&reduced, 2)),
            fitted_frequency(&times, &col(&pde, 2)),
        ),
        max_center_deviation: max_center,
        max_center_deviation_rel: if excursion > 0.0 { max_center / excursion } else { max_center },
        max_width_deviation_rel: max_width,
        times,
        pde,
        reduced,
    })
}

fn run_compare(config: &ExperimentConfig, emit: &mut Emit) -> Result<String> {
    let report = compare_models(config)?;
    let summary = report.summary();
    emit.add(format!("{}_compare.csv", config.prefix), report.to_csv());
    emit.add(format!("{}_compare.txt", config.prefix), summary.clone());
    Ok(summary)
}
