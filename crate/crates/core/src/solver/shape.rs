use num_complex::Complex64;

use crate::observables::moments;
use crate::spectral::Spectral;
use crate::state::{Component, TwoComponentState};

/// Largest departure from the rigidly translated reference profile:
/// `max_t max_s min_a || n_s(t) - n_ref,s(. - a) ||_1 / (2 N_s)`, in `[0, 1]`.
pub fn shape_deformation<'a>(
    states: impl IntoIterator<Item = &'a TwoComponentState>,
    reference: &TwoComponentState,
) -> f64 {
    shape_deformation_series(states, reference)
        .into_iter()
        .fold(0.0, f64::max)
}

/// `D(t)` for every state in order.
pub fn shape_deformation_series<'a>(
    states: impl IntoIterator<Item = &'a TwoComponentState>,
    reference: &TwoComponentState,
) -> Vec<f64> {
    let spectral = Spectral::new(reference.grid().clone());
    let refs: Vec<Vec<f64>> = Component::BOTH
        .iter()
        .map(|&c| reference.density(c))
        .collect();
    states
        .into_iter()
        .map(|s| {
            Component::BOTH
                .iter()
                .zip(&refs)
                .map(|(&c, r)| component_deformation(&spectral, &s.density(c), r))
                .fold(0.0, f64::max)
        })
        .collect()
}

fn l1_mismatch(spectral: &Spectral, density: &[f64], reference: &[Complex64], shift: f64) -> f64 {
    let moved = spectral.translate(reference, shift);
    density
        .iter()
        .zip(&moved)
        .map(|(d, m)| (d - m.re).abs())
        .sum()
}

fn component_deformation(spectral: &Spectral, density: &[f64], reference: &[f64]) -> f64 {
    let grid = spectral.grid();
    let dx = grid.dx();
    let (norm, center, width) = moments(grid.points(), density, dx);
    let (_, ref_center, _) = moments(grid.points(), reference, dx);
    let reference: Vec<Complex64> = reference.iter().map(|&r| Complex64::new(r, 0.0)).collect();

    // Golden-section search for the best shift around the centroid offset.
    let guess = center - ref_center;
    let half = (0.25 * width).max(4.0 * dx);
    let (mut lo, mut hi) = (guess - half, guess + half);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let f = |a: f64| l1_mismatch(spectral, density, &reference, a);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > 1e-6 * dx {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    let best = fc.min(fd).min(f(guess));
    (best * dx / (2.0 * norm)).clamp(0.0, 1.0)
}
