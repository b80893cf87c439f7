//! Linear stability of the reduced model and the Thomas-Fermi spectra.

mod center;
mod legendre;
mod width;

use std::fmt::Write as _;

pub use center::{center_matrix, center_stability, g_tilde, CenterStabilityReport};
pub use legendre::{
    epsilon_analytic, gauss_legendre, legendre_eigenvalues, legendre_spectrum_single, LegendreMode,
    MIN_GRID, MISMATCH_LIMIT,
};
pub use width::{decoupled_width_frequencies, normal_modes, width_normal_modes, WidthModeReport};

use crate::error::{Error, Result};
use crate::params::{Params, PARAM_NAMES};
use crate::variational::{equilibrium_widths, EquilibriumWidths};

/// Mode frequency `sqrt(1 - c^2) sqrt(n (n + 1) / 2)` of the equal-coupling
/// mixture with `c = g_ab / g`, in units of the trap frequency.
pub fn coupled_mode_scaling(c: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::InvalidParams(format!("c = {c} outside [0, 1]")));
    }
    if n == 0 {
        return Err(Error::InvalidParams("mode index must be positive".into()));
    }
    if c == 0.0 {
        return Ok(epsilon_analytic(n));
    }
    Ok((1.0 - c * c).sqrt() * epsilon_analytic(n))
}

/// `(g_ab^2 > g_a g_b, g_ab - sqrt(g_a g_b))`.
pub fn miscibility_criterion(params: &Params) -> (bool, f64) {
    let g2 = params.g_alpha * params.g_beta;
    (
        params.g_alphabeta * params.g_alphabeta > g2,
        params.g_alphabeta - g2.sqrt(),
    )
}

/// Threshold above which `xi` no longer counts as small.
pub const XI_LIMIT: f64 = 0.1;

/// Dimensionless Thomas-Fermi quantities of a mixed cloud.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TFParams {
    pub mu: f64,
    /// `omega / (2 mu)`.
    pub xi: f64,
    /// `g_s n_s / mu` at the trap center.
    pub nbar_alpha: f64,
    pub nbar_beta: f64,
    /// `g_ab / g_a`.
    pub c_alpha: f64,
    pub c_beta: f64,
    /// Mode frequency in units of the trap frequency, when one is attached.
    pub epsilon: Option<f64>,
}

impl TFParams {
    /// Thomas-Fermi parameters of an overlapped mixture whose components
    /// share one profile with densities in proportion to `N_s`. The cloud
    /// then behaves as a single species with mean-field coupling
    /// `(g_a N_a^2 + g_b N_b^2 + 2 g_ab N_a N_b) / N^2`.
    pub fn from_params(params: &Params) -> Result<Self> {
        params.validate()?;
        if params.g_alpha <= 0.0 || params.g_beta <= 0.0 {
            return Err(Error::InvalidParams(
                "Thomas-Fermi parameters need positive g_alpha and g_beta".into(),
            ));
        }
        let (na, nb) = (params.n_alpha, params.n_beta);
        let n = params.total_number();
        let g_eff = (params.g_alpha * na * na
            + params.g_beta * nb * nb
            + 2.0 * params.g_alphabeta * na * nb)
            / (n * n);
        let mu = thomas_fermi_mu(g_eff * n, params.omega);
        Ok(TFParams {
            mu,
            xi: params.omega / (2.0 * mu),
            nbar_alpha: params.g_alpha * na / (n * g_eff),
            nbar_beta: params.g_beta * nb / (n * g_eff),
            c_alpha: params.g_alphabeta / params.g_alpha,
            c_beta: params.g_alphabeta / params.g_beta,
            epsilon: None,
        })
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        TFParams {
            epsilon: Some(epsilon),
            ..self
        }
    }

    /// True when `xi > XI_LIMIT`.
    pub fn xi_flag(&self) -> bool {
        self.xi > XI_LIMIT
    }
}

/// `mu = (3 g N omega / (4 sqrt 2))^(2/3)`.
pub fn thomas_fermi_mu(g_n: f64, omega: f64) -> f64 {
    (3.0 * g_n * omega / (4.0 * 2f64.sqrt())).powf(2.0 / 3.0)
}

/// Everything the analytic stability tools say about one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub params: Params,
    pub equilibrium: EquilibriumWidths,
    pub width_modes: WidthModeReport,
    pub decoupled: (f64, f64),
    pub center: CenterStabilityReport,
    pub separated: bool,
    pub miscibility_margin: f64,
}

pub fn stability_report(params: &Params) -> Result<StabilityReport> {
    params.validate()?;
    let equilibrium = equilibrium_widths(params)?;
    let width_modes = width_normal_modes(params, &equilibrium);
    let decoupled = decoupled_width_frequencies(params)?;
    let center = center_stability(params, equilibrium.total_width());
    let (separated, miscibility_margin) = miscibility_criterion(params);
    Ok(StabilityReport {
        params: *params,
        equilibrium,
        width_modes,
        decoupled,
        center,
        separated,
        miscibility_margin,
    })
}

impl StabilityReport {
    fn fields(&self) -> Vec<(&'static str, String)> {
        let mut out: Vec<(&'static str, String)> = PARAM_NAMES
            .iter()
            .map(|&k| (k, fmt(self.params.get(k).unwrap_or(f64::NAN))))
            .collect();
        let m = &self.width_modes;
        let c = &self.center;
        let (dx, xa, xb) = match (c.separation, c.fixed_points.get(1)) {
            (Some(d), Some(&(xa, xb))) => (d, xa, xb),
            _ => (0.0, 0.0, 0.0),
        };
        out.extend([
            ("w_alpha_eq", fmt(self.equilibrium.w_alpha_eq)),
            ("w_beta_eq", fmt(self.equilibrium.w_beta_eq)),
            ("omega_a1", fmt(m.omega_a1)),
            ("omega_a2", fmt(m.omega_a2)),
            ("omega_b1", fmt(m.omega_b1)),
            ("omega_b2", fmt(m.omega_b2)),
            ("omega_plus_sq", fmt(m.omega_plus_sq)),
            ("omega_minus_sq", fmt(m.omega_minus_sq)),
            ("width_stable", m.stable.to_string()),
            ("decoupled_alpha", fmt(self.decoupled.0)),
            ("decoupled_beta", fmt(self.decoupled.1)),
            ("g_tilde", fmt(c.g_tilde)),
            ("lambda_plus", fmt(c.lambda_plus)),
            ("lambda_minus", fmt(c.lambda_minus)),
            ("threshold_eigenvalue", fmt(c.threshold_eigenvalue)),
            ("threshold_printed", fmt(c.threshold_printed)),
            ("double_well", c.double_well.to_string()),
            ("veff_curvature", fmt(c.veff_curvature)),
            ("separation", fmt(dx)),
            ("fixed_x_alpha", fmt(xa)),
            ("fixed_x_beta", fmt(xb)),
            ("separated", self.separated.to_string()),
            ("miscibility_margin", fmt(self.miscibility_margin)),
        ]);
        out
    }

    /// One `key = value` line per field.
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.fields() {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }

    pub fn csv_header() -> String {
        let dummy = StabilityReport {
            params: Params::default(),
            equilibrium: EquilibriumWidths {
                w_alpha_eq: 1.0,
                w_beta_eq: 1.0,
                residuals: [0.0; 2],
            },
            width_modes: normal_modes(0.0, 0.0, 0.0, 0.0),
            decoupled: (0.0, 0.0),
            center: center_stability(&Params::default(), 1.0),
            separated: false,
            miscibility_margin: 0.0,
        };
        dummy.fields().iter().map(|(k, _)| *k).collect::<Vec<_>>().join(",")
    }

    pub fn csv_row(&self) -> String {
        self.fields().into_iter().map(|(_, v)| v).collect::<Vec<_>>().join(",")
    }
}

fn fmt(x: f64) -> String {
    format!("{x:e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ga: f64, gb: f64, gab: f64, om: f64, na: f64, nb: f64) -> Params {
        Params::new(ga, gb, gab, om, na, nb).unwrap()
    }

    #[test]
    fn ideal_breathing_at_twice_the_trap_frequency() {
        let p = params(0.0, 0.0, 0.0, 1.3, 1.0, 1.0);
        let eq = equilibrium_widths(&p).unwrap();
        let m = width_normal_modes(&p, &eq);
        let om2 = 1.3f64 * 1.3;
        assert_eq!(m.omega_a2, 0.0);
        assert_eq!(m.omega_b2, 0.0);
        assert!((m.omega_plus_sq - 4.0 * om2).abs() < 1e-10);
        assert!((m.omega_minus_sq - 4.0 * om2).abs() < 1e-10);
        assert!(m.stable);
    }

    #[test]
    fn symmetric_modes_split_in_and_out_of_phase() {
        let p = params(1.0, 1.0, 0.5, 1.0, 10.0, 10.0);
        let eq = equilibrium_widths(&p).unwrap();
        let m = width_normal_modes(&p, &eq);
        assert!((m.omega_plus_sq - (m.omega_a1 + m.omega_a2)).abs() < 1e-12);
        assert!((m.omega_minus_sq - (m.omega_a1 - m.omega_a2)).abs() < 1e-12);
    }

    #[test]
    fn decoupled_matches_zero_coupling_modes() {
        let p = params(0.7, 1.9, 0.0, 1.1, 5.0, 12.0);
        let eq = equilibrium_widths(&p).unwrap();
        let m = width_normal_modes(&p, &eq);
        let (a, b) = decoupled_width_frequencies(&p).unwrap();
        assert_eq!(a, m.omega_a1);
        assert_eq!(b, m.omega_b1);
        let ideal = decoupled_width_frequencies(&params(0.0, 0.0, 0.0, 1.0, 1.0, 1.0)).unwrap();
        assert!((ideal.0 - 4.0).abs() < 1e-10);
    }

    #[test]
    fn thomas_fermi_breathing_limit() {
        let p = params(1000.0, 1000.0, 0.0, 1.0, 1.0, 1.0);
        let (a, _) = decoupled_width_frequencies(&p).unwrap();
        assert!((a.sqrt() - 3f64.sqrt()).abs() / 3f64.sqrt() < 0.01, "{}", a.sqrt());
    }

    #[test]
    fn center_eigenvalues() {
        let p = params(1.0, 1.0, 0.0, 1.0, 3.0, 4.0);
        let r = center_stability(&p, 1.0);
        assert_eq!(r.lambda_plus, -1.0);
        assert_eq!(r.lambda_minus, -1.0);
        assert_eq!(r.fixed_points, vec![(0.0, 0.0)]);

        // g_tilde N = 2 omega^2
        let w = 1.2;
        let n = 7.0;
        let gab = 2.0 * (2.0 * std::f64::consts::PI).sqrt() * w * w * w / n;
        let p = params(1.0, 1.0, gab, 1.0, 3.0, 4.0);
        let r = center_stability(&p, w);
        assert!((r.lambda_plus - 1.0).abs() < 1e-12);
        assert!((r.lambda_minus + 1.0).abs() < 1e-12);
        assert!(r.double_well);
        assert_eq!(r.fixed_points.len(), 3);
        let d = r.separation.unwrap();
        let exact = w * (2.0 * 2f64.ln()).sqrt();
        assert!((d - exact).abs() < 1e-12);
        let (xa, xb) = r.fixed_points[1];
        assert!((xa - xb - d).abs() < 1e-12);
        assert!((3.0 * xa + 4.0 * xb).abs() < 1e-12);
    }

    #[test]
    fn marginal_curvature_vanishes() {
        let w = 0.9;
        let p0 = params(1.0, 1.0, 1.0, 1.4, 2.0, 5.0);
        let r0 = center_stability(&p0, w);
        let p = p0.with("g_alphabeta", r0.threshold_eigenvalue).unwrap();
        let r = center_stability(&p, w);
        assert!(r.lambda_plus.abs() < 1e-10);
        assert!(r.veff_curvature.abs() < 1e-10);
    }

    #[test]
    fn mode_scaling() {
        assert_eq!(coupled_mode_scaling(0.0, 1).unwrap(), 1.0);
        assert_eq!(coupled_mode_scaling(1.0, 4).unwrap(), 0.0);
        assert!((coupled_mode_scaling(0.6, 1).unwrap() - 0.8).abs() < 1e-15);
        assert!(coupled_mode_scaling(1.01, 1).is_err());
        assert!(coupled_mode_scaling(-0.1, 1).is_err());
    }

    #[test]
    fn miscibility() {
        assert_eq!(miscibility_criterion(&params(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)), (false, 0.0));
        let (sep, margin) = miscibility_criterion(&params(1.0, 4.0, 1.9, 1.0, 1.0, 1.0));
        assert!(!sep);
        assert!((margin + 0.1).abs() < 1e-12);
        assert!(miscibility_criterion(&params(1.0, 1.0, 1.2, 1.0, 1.0, 1.0)).0);
    }

    #[test]
    fn thomas_fermi_parameters() {
        let tf = TFParams::from_params(&params(1.0, 1.0, 0.5, 1.0, 500.0, 500.0)).unwrap();
        assert!(!tf.xi_flag());
        assert!((tf.nbar_alpha + tf.c_alpha * tf.nbar_beta - 1.0).abs() < 1e-12, "{tf:?}");
        assert_eq!(tf.c_alpha, 0.5);
        let weak = TFParams::from_params(&params(0.01, 0.01, 0.0, 1.0, 1.0, 1.0)).unwrap();
        assert!(weak.xi_flag());
        assert!(TFParams::from_params(&params(0.0, 1.0, 0.0, 1.0, 1.0, 1.0)).is_err());
        assert_eq!(tf.with_epsilon(0.8).epsilon, Some(0.8));
    }

    #[test]
    fn legendre_low_modes() {
        let modes = legendre_spectrum_single(5, 1000).unwrap();
        for m in &modes {
            assert!(m.mismatch() < 1e-6, "{m:?}");
        }
        assert!((modes[0].epsilon_numeric - 1.0).abs() < 1e-6);
        assert!((modes[1].epsilon_numeric - 3f64.sqrt()).abs() < 1e-6);
        for m in &modes {
            assert_eq!(coupled_mode_scaling(0.0, m.n).unwrap(), m.epsilon_analytic);
        }
    }

    #[test]
    fn report_serialization() {
        let r = stability_report(&params(1.0, 1.0, 1.5, 1.0, 20.0, 20.0)).unwrap();
        let header = StabilityReport::csv_header();
        let row = r.csv_row();
        assert_eq!(header.split(',').count(), row.split(',').count());
        let kv = r.to_key_value();
        assert!(kv.contains("double_well = true"));
        assert!(kv.lines().all(|l| l.contains(" = ")));
    }
}
