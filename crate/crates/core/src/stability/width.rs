use std::f64::consts::PI;

use crate::error::Result;
use crate::params::Params;
use crate::variational::{equilibrium_widths, EquilibriumWidths};

/// Coupled width-oscillation coefficients (units of omega^2) and the
/// squared normal-mode frequencies of
/// `d'' + [[w_a1, w_a2], [w_b2, w_b1]] d = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthModeReport {
    pub omega_a1: f64,
    pub omega_a2: f64,
    pub omega_b1: f64,
    pub omega_b2: f64,
    pub omega_plus_sq: f64,
    pub omega_minus_sq: f64,
    pub stable: bool,
}

impl WidthModeReport {
    /// `w_a1 w_b1 - w_a2 w_b2`, the product of the squared frequencies.
    pub fn determinant(&self) -> f64 {
        self.omega_a1 * self.omega_b1 - self.omega_a2 * self.omega_b2
    }

    /// Real mode frequencies, `None` for a non-positive squared frequency.
    pub fn frequencies(&self) -> (Option<f64>, Option<f64>) {
        let f = |x: f64| (x > 0.0).then(|| x.sqrt());
        (f(self.omega_plus_sq), f(self.omega_minus_sq))
    }
}

/// Roots of `2 w^2 = (a1 + b1) +- sqrt((a1 + b1)^2 - 4 (a1 b1 - a2 b2))`.
///
/// The smaller root is taken from the determinant to avoid cancellation.
pub fn normal_modes(omega_a1: f64, omega_a2: f64, omega_b1: f64, omega_b2: f64) -> WidthModeReport {
    let trace = omega_a1 + omega_b1;
    let det = omega_a1 * omega_b1 - omega_a2 * omega_b2;
    let disc = ((omega_a1 - omega_b1).powi(2) + 4.0 * omega_a2 * omega_b2).max(0.0);
    let root = disc.sqrt();
    let big = 0.5 * (trace + trace.signum() * root);
    let (plus, minus) = if big == 0.0 {
        (0.5 * root, -0.5 * root)
    } else {
        let small = det / big;
        (big.max(small), big.min(small))
    };
    WidthModeReport {
        omega_a1,
        omega_a2,
        omega_b1,
        omega_b2,
        omega_plus_sq: plus,
        omega_minus_sq: minus,
        stable: det > 0.0 && trace > 0.0,
    }
}

/// Width-mode coefficients about the overlapped equilibrium, evaluated at
/// `sigma_s = W_s,eq / W_eq(g = 0)`.
pub fn width_normal_modes(params: &Params, eq: &EquilibriumWidths) -> WidthModeReport {
    let om = params.omega;
    let om2 = om * om;
    let (sa, sb) = eq.sigmas(om);
    let s3 = (sa * sa + sb * sb).powf(1.5);
    let cross = |n_other: f64| params.g_alphabeta * n_other / (PI * om).sqrt() / s3;
    let own = |g_n: f64, s: f64| g_n / (2.0 * PI * om).sqrt() / s.powi(3);
    let a1 = om2 * (2.0 + 2.0 / sa.powi(4) + own(params.g_alpha * params.n_alpha, sa) + cross(params.n_beta));
    let b1 = om2 * (2.0 + 2.0 / sb.powi(4) + own(params.g_beta * params.n_beta, sb) + cross(params.n_alpha));
    let a2 = om2 * (sb / sa) * cross(params.n_beta);
    let b2 = om2 * (sa / sb) * cross(params.n_alpha);
    normal_modes(a1, a2, b1, b2)
}

/// Squared width frequencies of the two species when their overlap has
/// vanished, using single-species equilibria.
pub fn decoupled_width_frequencies(params: &Params) -> Result<(f64, f64)> {
    let single = Params {
        g_alphabeta: 0.0,
        ..*params
    };
    let eq = equilibrium_widths(&single)?;
    let report = width_normal_modes(&single, &eq);
    Ok((report.omega_a1, report.omega_b1))
}
