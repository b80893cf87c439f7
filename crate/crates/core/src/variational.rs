//! Gaussian-ansatz reduced model: Ehrenfest equations for the packet
//! centers, momenta and widths of both species.
//!
//! With `dx = x0_a - x0_b`, `W^2 = W_a^2 + W_b^2` and `E = exp(-dx^2 / 2W^2)`:
//!
//! ```text
//! x0_a' = p0_a
//! p0_a' = -omega^2 x0_a + N_b g_ab dx E / (sqrt(2 pi) W^3)
//! W_a W_a'' = 1/(4 W_a^2) - omega^2 W_a^2 + g_a N_a / (4 sqrt(pi) W_a)
//!           + g_ab N_b E / (2 sqrt(2 pi) W) * [1 + 2 x0_a dx / W^2]
//! ```
//!
//! and the `a <-> b` image with `dx -> -dx`. The width equation above is
//! the chirped-Gaussian closure; [`WidthClosure::Printed`] adds `W_a'^2` to
//! the left-hand side instead. [`CrossTerm::Gradient`] swaps the bracketed
//! interspecies term for one that depends on the centers only through `dx`.

use std::f64::consts::PI;
use std::io::Write;

use crate::error::{Error, Result};
use crate::params::Params;

/// Phase point of the reduced model.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VariationalState {
    pub x0_alpha: f64,
    pub p0_alpha: f64,
    pub x0_beta: f64,
    pub p0_beta: f64,
    pub w_alpha: f64,
    pub v_alpha: f64,
    pub w_beta: f64,
    pub v_beta: f64,
}

impl VariationalState {
    /// Both packets at rest with the given centers and widths.
    pub fn at_rest(x0_alpha: f64, x0_beta: f64, w_alpha: f64, w_beta: f64) -> Self {
        VariationalState {
            x0_alpha,
            x0_beta,
            w_alpha,
            w_beta,
            ..Default::default()
        }
    }

    pub fn delta_x(&self) -> f64 {
        self.x0_alpha - self.x0_beta
    }

    /// `W = sqrt(W_a^2 + W_b^2)`.
    pub fn total_width(&self) -> f64 {
        self.w_alpha.hypot(self.w_beta)
    }

    pub fn sigma_alpha(&self, omega: f64) -> f64 {
        self.w_alpha / ideal_width(omega)
    }

    pub fn sigma_beta(&self, omega: f64) -> f64 {
        self.w_beta / ideal_width(omega)
    }

    pub fn sigma(&self, omega: f64) -> f64 {
        self.total_width() / ideal_width(omega)
    }

    /// Number-weighted center of mass and its momentum.
    pub fn center_of_mass(&self, params: &Params) -> (f64, f64) {
        let n = params.total_number();
        (
            (params.n_alpha * self.x0_alpha + params.n_beta * self.x0_beta) / n,
            (params.n_alpha * self.p0_alpha + params.n_beta * self.p0_beta) / n,
        )
    }

    /// `P^2/2 + omega^2 X^2/2` of the center-of-mass mode, conserved for
    /// any couplings.
    pub fn center_of_mass_energy(&self, params: &Params) -> f64 {
        let (x, p) = self.center_of_mass(params);
        0.5 * p * p + 0.5 * params.omega * params.omega * x * x
    }

    pub fn to_array(self) -> [f64; 8] {
        [
            self.x0_alpha,
            self.p0_alpha,
            self.x0_beta,
            self.p0_beta,
            self.w_alpha,
            self.v_alpha,
            self.w_beta,
            self.v_beta,
        ]
    }

    pub fn from_array(a: [f64; 8]) -> Self {
        VariationalState {
            x0_alpha: a[0],
            p0_alpha: a[1],
            x0_beta: a[2],
            p0_beta: a[3],
            w_alpha: a[4],
            v_alpha: a[5],
            w_beta: a[6],
            v_beta: a[7],
        }
    }

    fn axpy(self, h: f64, d: VariationalState) -> Self {
        let (a, b) = (self.to_array(), d.to_array());
        VariationalState::from_array(std::array::from_fn(|i| a[i] + h * b[i]))
    }
}

/// Equilibrium width of a non-interacting packet, `(4 omega^2)^(-1/4)`.
pub fn ideal_width(omega: f64) -> f64 {
    (4.0 * omega * omega).powf(-0.25)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WidthClosure {
    /// `W W'' = RHS`: the Gaussian carries the chirp that makes `W` move.
    #[default]
    Chirped,
    /// `W W'' + W'^2 = RHS`, the width equation in its printed form.
    Printed,
}

/// Interspecies term of the width equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CrossTerm {
    /// `g_ab N_b E / (2 sqrt(2 pi) W) * [1 + 2 x0_a dx / W^2]`.
    #[default]
    Printed,
    /// `-W_a d/dW_a` of the overlap energy,
    /// `g_ab N_b E W_a^2 (1 - dx^2 / W^2) / (sqrt(2 pi) W^3)`. Depends on the
    /// centers only through `dx`; equals `Printed` at `dx = 0`, `W_a = W_b`.
    Gradient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ModelOptions {
    /// Use `[1 + 2 x0_b dx / W^2]` in the beta width bracket as printed,
    /// instead of the `a <-> b` image `[1 - 2 x0_b dx / W^2]`.
    pub literal_mode: bool,
    pub closure: WidthClosure,
    pub cross: CrossTerm,
}

impl ModelOptions {
    pub fn literal() -> Self {
        ModelOptions {
            literal_mode: true,
            ..Default::default()
        }
    }
}

/// Time derivative of the phase point (default closure).
pub fn ehrenfest_rhs(v: &VariationalState, params: &Params, literal_mode: bool) -> Result<VariationalState> {
    ehrenfest_rhs_with(
        v,
        params,
        &ModelOptions {
            literal_mode,
            ..Default::default()
        },
    )
}

pub fn ehrenfest_rhs_with(
    v: &VariationalState,
    params: &Params,
    options: &ModelOptions,
) -> Result<VariationalState> {
    if !(v.w_alpha > 0.0 && v.w_beta > 0.0) {
        return Err(Error::InvalidParams(format!(
            "widths must be positive (W_a = {}, W_b = {})",
            v.w_alpha, v.w_beta
        )));
    }
    let p = params;
    let w2_omega = p.omega * p.omega;
    let dx = v.delta_x();
    let w2 = v.w_alpha * v.w_alpha + v.w_beta * v.w_beta;
    let w = w2.sqrt();
    let overlap = (-dx * dx / (2.0 * w2)).exp();

    let force = p.g_alphabeta * dx * overlap / ((2.0 * PI).sqrt() * w * w2);
    let pdot_a = -w2_omega * v.x0_alpha + p.n_beta * force;
    let pdot_b = -w2_omega * v.x0_beta - p.n_alpha * force;

    let (cross_a, cross_b) = match options.cross {
        CrossTerm::Printed => {
            let cross = p.g_alphabeta * overlap / (2.0 * (2.0 * PI).sqrt() * w);
            let bracket_a = 1.0 + 2.0 * v.x0_alpha * dx / w2;
            let bracket_b = if options.literal_mode {
                1.0 + 2.0 * v.x0_beta * dx / w2
            } else {
                1.0 - 2.0 * v.x0_beta * dx / w2
            };
            (cross * bracket_a, cross * bracket_b)
        }
        CrossTerm::Gradient => {
            let cross = p.g_alphabeta * overlap * (1.0 - dx * dx / w2) / ((2.0 * PI).sqrt() * w * w2);
            (cross * v.w_alpha * v.w_alpha, cross * v.w_beta * v.w_beta)
        }
    };
    let rhs_a = single_width_rhs(v.w_alpha, p.omega, p.g_alpha * p.n_alpha) + cross_a * p.n_beta;
    let rhs_b = single_width_rhs(v.w_beta, p.omega, p.g_beta * p.n_beta) + cross_b * p.n_alpha;

    let (ka, kb) = match options.closure {
        WidthClosure::Chirped => (0.0, 0.0),
        WidthClosure::Printed => (v.v_alpha * v.v_alpha, v.v_beta * v.v_beta),
    };
    Ok(VariationalState {
        x0_alpha: v.p0_alpha,
        p0_alpha: pdot_a,
        x0_beta: v.p0_beta,
        p0_beta: pdot_b,
        w_alpha: v.v_alpha,
        v_alpha: (rhs_a - ka) / v.w_alpha,
        w_beta: v.v_beta,
        v_beta: (rhs_b - kb) / v.w_beta,
    })
}

/// `1/(4W^2) - omega^2 W^2 + gN / (4 sqrt(pi) W)`.
fn single_width_rhs(w: f64, omega: f64, g_n: f64) -> f64 {
    0.25 / (w * w) - omega * omega * w * w + g_n / (4.0 * PI.sqrt() * w)
}

/// Classic fourth-order Runge-Kutta over [`ehrenfest_rhs`], recording
/// every step.
pub fn integrate(
    v0: &VariationalState,
    params: &Params,
    dt: f64,
    t_final: f64,
) -> Result<Vec<(f64, VariationalState)>> {
    integrate_with(v0, params, dt, t_final, &ModelOptions::default(), 1)
}

pub fn integrate_with(
    v0: &VariationalState,
    params: &Params,
    dt: f64,
    t_final: f64,
    options: &ModelOptions,
    record_every: usize,
) -> Result<Vec<(f64, VariationalState)>> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParams(format!("dt = {dt} must be positive")));
    }
    if record_every == 0 {
        return Err(Error::InvalidParams("record_every must be positive".into()));
    }
    let n_steps = (t_final / dt).round() as usize;
    let collapse = |t: f64| Error::WidthCollapse { time: t };
    let rhs = |t: f64, s: &VariationalState| {
        if !(s.w_alpha > 0.0 && s.w_beta > 0.0) {
            return Err(collapse(t));
        }
        ehrenfest_rhs_with(s, params, options)
    };
    let mut out = Vec::with_capacity(n_steps / record_every + 2);
    let mut s = *v0;
    rhs(0.0, &s)?;
    out.push((0.0, s));
    for i in 0..n_steps {
        let t = i as f64 * dt;
        let k1 = rhs(t, &s)?;
        let k2 = rhs(t + 0.5 * dt, &s.axpy(0.5 * dt, k1))?;
        let k3 = rhs(t + 0.5 * dt, &s.axpy(0.5 * dt, k2))?;
        let k4 = rhs(t + dt, &s.axpy(dt, k3))?;
        s = s
            .axpy(dt / 6.0, k1)
            .axpy(dt / 3.0, k2)
            .axpy(dt / 3.0, k3)
            .axpy(dt / 6.0, k4);
        let t_next = (i + 1) as f64 * dt;
        if !(s.w_alpha > 0.0 && s.w_beta > 0.0) {
            return Err(collapse(t_next));
        }
        if (i + 1) % record_every == 0 || i + 1 == n_steps {
            out.push((t_next, s));
        }
    }
    Ok(out)
}

/// Equilibrium widths of the overlapped configuration (`x0_a = x0_b = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumWidths {
    pub w_alpha_eq: f64,
    pub w_beta_eq: f64,
    pub residuals: [f64; 2],
}

impl EquilibriumWidths {
    pub fn total_width(&self) -> f64 {
        self.w_alpha_eq.hypot(self.w_beta_eq)
    }

    /// `(sigma_a, sigma_b)`: widths in units of [`ideal_width`].
    pub fn sigmas(&self, omega: f64) -> (f64, f64) {
        let w0 = ideal_width(omega);
        (self.w_alpha_eq / w0, self.w_beta_eq / w0)
    }
}

/// Target residual of the stationarity system.
pub const EQUILIBRIUM_TOLERANCE: f64 = 1e-12;

/// Stationarity defects
/// `1/(4W_s^2) - omega^2 W_s^2 + g_s N_s/(4 sqrt(pi) W_s) + g_ab N_o/(2 sqrt(2 pi) W)`.
pub fn stationarity_residuals(params: &Params, w_alpha: f64, w_beta: f64) -> [f64; 2] {
    let w = w_alpha.hypot(w_beta);
    let c = params.g_alphabeta / (2.0 * (2.0 * PI).sqrt() * w);
    [
        single_width_rhs(w_alpha, params.omega, params.g_alpha * params.n_alpha) + c * params.n_beta,
        single_width_rhs(w_beta, params.omega, params.g_beta * params.n_beta) + c * params.n_alpha,
    ]
}

fn stationarity_jacobian(params: &Params, wa: f64, wb: f64) -> [[f64; 2]; 2] {
    let w2 = wa * wa + wb * wb;
    let w3 = w2 * w2.sqrt();
    let om2 = params.omega * params.omega;
    let c = params.g_alphabeta / (2.0 * (2.0 * PI).sqrt());
    let self_term = |w: f64, g_n: f64| -0.5 / (w * w * w) - 2.0 * om2 * w - g_n / (4.0 * PI.sqrt() * w * w);
    let ca = c * params.n_beta;
    let cb = c * params.n_alpha;
    [
        [
            self_term(wa, params.g_alpha * params.n_alpha) - ca * wa / w3,
            -ca * wb / w3,
        ],
        [
            -cb * wa / w3,
            self_term(wb, params.g_beta * params.n_beta) - cb * wb / w3,
        ],
    ]
}

/// Solves the stationarity system by damped Newton from the ideal width,
/// falling back to alternating bisection (each residual is strictly
/// decreasing in its own width).
pub fn equilibrium_widths(params: &Params) -> Result<EquilibriumWidths> {
    params.validate()?;
    let start = ideal_width(params.omega);
    let (wa, wb) = newton(params, start, start)
        .or_else(|| bisection(params, start, start))
        .ok_or(Error::NoConvergence {
            iterations: 200,
            last_change: f64::NAN,
        })?;
    let residuals = stationarity_residuals(params, wa, wb);
    Ok(EquilibriumWidths {
        w_alpha_eq: wa,
        w_beta_eq: wb,
        residuals,
    })
}

fn max_abs(r: [f64; 2]) -> f64 {
    r[0].abs().max(r[1].abs())
}

fn newton(params: &Params, mut wa: f64, mut wb: f64) -> Option<(f64, f64)> {
    let mut r = stationarity_residuals(params, wa, wb);
    for _ in 0..200 {
        if max_abs(r) < 0.1 * EQUILIBRIUM_TOLERANCE {
            break;
        }
        let j = stationarity_jacobian(params, wa, wb);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let da = -(j[1][1] * r[0] - j[0][1] * r[1]) / det;
        let db = -(-j[1][0] * r[0] + j[0][0] * r[1]) / det;
        let mut lambda = 1.0;
        loop {
            let (na, nb) = (wa + lambda * da, wb + lambda * db);
            if na > 0.0 && nb > 0.0 {
                let nr = stationarity_residuals(params, na, nb);
                if max_abs(nr) < max_abs(r) || lambda < 1e-3 {
                    if max_abs(nr) >= max_abs(r) {
                        // Stalled at rounding level.
                        return (max_abs(r) < EQUILIBRIUM_TOLERANCE).then_some((wa, wb));
                    }
                    wa = na;
                    wb = nb;
                    r = nr;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-12 {
                return None;
            }
        }
    }
    (max_abs(r) < EQUILIBRIUM_TOLERANCE).then_some((wa, wb))
}

fn bisect_one(f: impl Fn(f64) -> f64, start: f64) -> f64 {
    let (mut lo, mut hi) = (start, start);
    while f(lo) < 0.0 {
        lo *= 0.5;
    }
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn bisection(params: &Params, mut wa: f64, mut wb: f64) -> Option<(f64, f64)> {
    for _ in 0..500 {
        wa = bisect_one(|w| stationarity_residuals(params, w, wb)[0], wa);
        wb = bisect_one(|w| stationarity_residuals(params, wa, w)[1], wb);
        if max_abs(stationarity_residuals(params, wa, wb)) < EQUILIBRIUM_TOLERANCE {
            return Some((wa, wb));
        }
    }
    None
}

/// `V_eff(dx) = omega^2 dx^2 / 2 + N g_ab exp(-dx^2 / 2W^2) / (sqrt(2 pi) W)`
/// with `N = N_a + N_b`.
pub fn effective_potential(delta_x: f64, params: &Params, w: f64) -> f64 {
    let n = params.total_number();
    0.5 * params.omega * params.omega * delta_x * delta_x
        + n * params.g_alphabeta / ((2.0 * PI).sqrt() * w) * (-delta_x * delta_x / (2.0 * w * w)).exp()
}

/// `dV_eff/d(dx)`.
pub fn effective_force_gradient(delta_x: f64, params: &Params, w: f64) -> f64 {
    let n = params.total_number();
    let g_tilde = params.g_alphabeta / ((2.0 * PI).sqrt() * w * w * w);
    delta_x * (params.omega * params.omega - n * g_tilde * (-delta_x * delta_x / (2.0 * w * w)).exp())
}

/// Header of the reduced-model trajectory CSV.
pub const TRAJECTORY_HEADER: &str = "t,x0a,p0a,x0b,p0b,wa,va,wb,vb";

/// Header of the effective-potential scan CSV.
pub const VEFF_HEADER: &str = "dx,v_eff";

pub fn write_trajectory_csv<W: Write>(out: &mut W, traj: &[(f64, VariationalState)]) -> Result<()> {
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for (t, s) in traj {
        writeln!(
            out,
            "{t},{},{},{},{},{},{},{},{}",
            s.x0_alpha, s.p0_alpha, s.x0_beta, s.p0_beta, s.w_alpha, s.v_alpha, s.w_beta, s.v_beta
        )?;
    }
    Ok(())
}

/// Samples `V_eff` on `points` evenly spaced values of `dx` in `[-dx_max, dx_max]`.
pub fn veff_scan(params: &Params, w: f64, dx_max: f64, points: usize) -> Vec<(f64, f64)> {
    let n = points.max(2);
    (0..n)
        .map(|i| {
            let dx = -dx_max + 2.0 * dx_max * i as f64 / (n - 1) as f64;
            (dx, effective_potential(dx, params, w))
        })
        .collect()
}

pub fn write_veff_csv<W: Write>(out: &mut W, scan: &[(f64, f64)]) -> Result<()> {
    writeln!(out, "{VEFF_HEADER}")?;
    for (dx, v) in scan {
        writeln!(out, "{dx},{v}")?;
    }
    Ok(())
}
