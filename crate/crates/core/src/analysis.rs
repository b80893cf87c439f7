//! Frequency estimation for sampled oscillations.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

/// Least-squares fit `offset + a cos(wt) + b sin(wt)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidFit {
    pub omega: f64,
    pub amplitude: f64,
    pub phase: f64,
    pub offset: f64,
    /// Root-mean-square residual of the fit.
    pub rms_residual: f64,
}

impl SinusoidFit {
    pub fn eval(&self, t: f64) -> f64 {
        self.offset + self.amplitude * (self.omega * t + self.phase).cos()
    }
}

/// Angular frequency from mean spacing of linearly interpolated crossings
/// of the de-meaned signal. `None` with fewer than two crossings.
pub fn zero_crossing_frequency(times: &[f64], values: &[f64]) -> Option<f64> {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let mut crossings = Vec::new();
    for i in 1..values.len() {
        let (a, b) = (values[i - 1] - mean, values[i] - mean);
        if a == 0.0 {
            crossings.push(times[i - 1]);
        } else if a * b < 0.0 {
            let f = a / (a - b);
            crossings.push(times[i - 1] + f * (times[i] - times[i - 1]));
        }
    }
    if crossings.len() < 2 {
        return None;
    }
    let span = crossings.last().unwrap() - crossings[0];
    let half_periods = (crossings.len() - 1) as f64;
    Some(PI * half_periods / span)
}

fn linear_fit(times: &[f64], values: &[f64], omega: f64) -> (Vector3<f64>, f64) {
    let mut ata = Matrix3::zeros();
    let mut atb = Vector3::zeros();
    for (&t, &y) in times.iter().zip(values) {
        let row = Vector3::new(1.0, (omega * t).cos(), (omega * t).sin());
        ata += row * row.transpose();
        atb += row * y;
    }
    let coef = ata
        .try_inverse()
        .map(|inv| inv * atb)
        .unwrap_or_else(Vector3::zeros);
    let sse: f64 = times
        .iter()
        .zip(values)
        .map(|(&t, &y)| {
            let r = y - coef[0] - coef[1] * (omega * t).cos() - coef[2] * (omega * t).sin();
            r * r
        })
        .sum();
    (coef, sse)
}

/// Nonlinear least-squares sinusoid fit. The frequency is scanned within
/// `+-30%` of `omega_guess` (or the zero-crossing estimate when `None`)
/// and refined by golden-section search.
pub fn fit_sinusoid(times: &[f64], values: &[f64], omega_guess: Option<f64>) -> Option<SinusoidFit> {
    let guess = omega_guess.or_else(|| zero_crossing_frequency(times, values))?;
    let sse = |w: f64| linear_fit(times, values, w).1;
    let (lo, hi) = (0.7 * guess, 1.3 * guess);
    let n_scan = 600;
    let step = (hi - lo) / n_scan as f64;
    let best = (0..=n_scan)
        .map(|i| lo + i as f64 * step)
        .map(|w| (w, sse(w)))
        .min_by(|a, b| a.1.total_cmp(&b.1))?
        .0;
    let (mut a, mut b) = (best - step, best + step);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (sse(c), sse(d));
    for _ in 0..100 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = sse(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = sse(d);
        }
    }
    let omega = 0.5 * (a + b);
    let (coef, sse) = linear_fit(times, values, omega);
    Some(SinusoidFit {
        omega,
        amplitude: coef[1].hypot(coef[2]),
        phase: (-coef[2]).atan2(coef[1]),
        offset: coef[0],
        rms_residual: (sse / times.len() as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_known_sinusoid() {
        let t: Vec<f64> = (0..2000).map(|i| i as f64 * 0.01).collect();
        let y: Vec<f64> = t.iter().map(|&t| 0.3 + 1.7 * (1.234 * t + 0.4).cos()).collect();
        let fit = fit_sinusoid(&t, &y, None).unwrap();
        assert!((fit.omega - 1.234).abs() < 1e-8);
        assert!((fit.amplitude - 1.7).abs() < 1e-8);
        assert!((fit.phase - 0.4).abs() < 1e-8);
        assert!((fit.offset - 0.3).abs() < 1e-8);
        assert!(fit.rms_residual < 1e-9);
        assert!((fit.eval(3.0) - y[300]).abs() < 1e-8);
    }

    #[test]
    fn zero_crossings() {
        let t: Vec<f64> = (0..5000).map(|i| i as f64 * 0.005).collect();
        let y: Vec<f64> = t.iter().map(|&t| (2.0 * t).sin()).collect();
        let w = zero_crossing_frequency(&t, &y).unwrap();
        assert!((w - 2.0).abs() < 1e-3);
        assert!(zero_crossing_frequency(&t[..10], &y[..10]).is_none());
    }
}
