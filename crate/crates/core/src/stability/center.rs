use std::f64::consts::PI;

use crate::params::Params;

/// Linear stability of the packet-center dynamics at frozen total width `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterStabilityReport {
    /// `g_ab / (sqrt(2 pi) W^3)`.
    pub g_tilde: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `(x*_a, x*_b)` pairs: the origin, plus the two symmetric minima of
    /// the effective potential when it is a double well.
    pub fixed_points: Vec<(f64, f64)>,
    /// `g_ab` at which `lambda_plus` crosses zero: `sqrt(2 pi) omega^2 W^3 / N`.
    pub threshold_eigenvalue: f64,
    /// `sqrt(2 pi) (omega^2 / N) (W_a^2 + W_b^2)`.
    pub threshold_printed: f64,
    pub double_well: bool,
    /// `V_eff''(0) = omega^2 - N g_tilde`.
    pub veff_curvature: f64,
    /// Positive root of `dV_eff/d(dx) = 0` when `double_well`.
    pub separation: Option<f64>,
}

/// Coefficient matrix of the linearized center equations,
/// `[[-w^2 + N_b g, -N_b g], [-N_a g, -w^2 + N_a g]]`.
pub fn center_matrix(params: &Params, w: f64) -> [[f64; 2]; 2] {
    let g = g_tilde(params, w);
    let om2 = params.omega * params.omega;
    [
        [-om2 + params.n_beta * g, -params.n_beta * g],
        [-params.n_alpha * g, -om2 + params.n_alpha * g],
    ]
}

pub fn g_tilde(params: &Params, w: f64) -> f64 {
    params.g_alphabeta / ((2.0 * PI).sqrt() * w * w * w)
}

/// Real eigenvalues of a 2x2 matrix with real spectrum, larger first.
fn eigenvalues_2x2(m: [[f64; 2]; 2]) -> (f64, f64) {
    let trace = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = ((m[0][0] - m[1][1]).powi(2) + 4.0 * m[0][1] * m[1][0]).max(0.0);
    let sign = if trace >= 0.0 { 1.0 } else { -1.0 };
    let big = 0.5 * (trace + sign * disc.sqrt());
    let small = if big != 0.0 { det / big } else { 0.5 * (trace - sign * disc.sqrt()) };
    (big.max(small), big.min(small))
}

/// Eigenvalues, thresholds, and fixed points of the center dynamics.
pub fn center_stability(params: &Params, w: f64) -> CenterStabilityReport {
    let om2 = params.omega * params.omega;
    let n = params.total_number();
    let gt = g_tilde(params, w);
    let (lambda_plus, lambda_minus) = eigenvalues_2x2(center_matrix(params, w));
    let veff_curvature = om2 - n * gt;
    let double_well = n * gt > om2;
    let mut fixed_points = vec![(0.0, 0.0)];
    let separation = double_well.then(|| double_well_separation(params, w));
    if let Some(d) = separation {
        let xa = params.n_beta * d / n;
        let xb = -params.n_alpha * d / n;
        fixed_points.push((xa, xb));
        fixed_points.push((-xa, -xb));
    }
    CenterStabilityReport {
        g_tilde: gt,
        lambda_plus,
        lambda_minus,
        fixed_points,
        threshold_eigenvalue: (2.0 * PI).sqrt() * om2 * w.powi(3) / n,
        threshold_printed: (2.0 * PI).sqrt() * om2 * w * w / n,
        double_well,
        veff_curvature,
        separation,
    }
}

/// Bisection for the nonzero root of `omega^2 - N g_tilde exp(-dx^2 / 2W^2)`,
/// bracketed in `(0, 6W]` and widened if needed.
fn double_well_separation(params: &Params, w: f64) -> f64 {
    let om2 = params.omega * params.omega;
    let ng = params.total_number() * g_tilde(params, w);
    let h = |d: f64| om2 - ng * (-d * d / (2.0 * w * w)).exp();
    let mut lo = 0.0;
    let mut hi = 6.0 * w;
    while h(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}
