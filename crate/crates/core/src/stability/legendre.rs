//! Spectrum of the Legendre operator `L[eta] = ((1 - x^2) eta')'` on
//! `(-1, 1)`, where `L[eta] = -2 eps^2 eta` gives the Thomas-Fermi mode
//! frequencies `eps` in units of the trap frequency.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Smallest accepted collocation size.
pub const MIN_GRID: usize = 200;

/// Largest accepted analytic/numeric mismatch.
pub const MISMATCH_LIMIT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreMode {
    pub n: usize,
    pub epsilon_analytic: f64,
    pub epsilon_numeric: f64,
}

impl LegendreMode {
    pub fn mismatch(&self) -> f64 {
        (self.epsilon_numeric - self.epsilon_analytic).abs()
    }
}

/// `sqrt(n (n + 1) / 2)`.
pub fn epsilon_analytic(n: usize) -> f64 {
    let n = n as f64;
    (n * (n + 1.0) / 2.0).sqrt()
}

/// Gauss-Legendre nodes (ascending) and weights by Newton iteration on the
/// three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Lagrange differentiation matrix on Gauss-Legendre nodes via barycentric
/// weights `(-1)^j sqrt((1 - x_j^2) w_j)`.
fn differentiation_matrix(nodes: &[f64], weights: &[f64]) -> DMatrix<f64> {
    let n = nodes.len();
    let bary: Vec<f64> = nodes
        .iter()
        .zip(weights)
        .enumerate()
        .map(|(j, (&x, &w))| {
            let s = ((1.0 - x * x) * w).sqrt();
            if j % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i != j {
                let v = bary[j] / bary[i] / (nodes[i] - nodes[j]);
                d[(i, j)] = v;
                diag -= v;
            }
        }
        d[(i, i)] = diag;
    }
    d
}

/// Eigenvalues `2 eps^2` of the weak form
/// `int (1 - x^2) eta' phi' = 2 eps^2 int eta phi` with Gauss-Legendre
/// quadrature on `n_grid` nodes, ascending. No boundary condition is
/// imposed; the weight `1 - x^2` vanishes at both ends.
pub fn legendre_eigenvalues(n_grid: usize) -> Vec<f64> {
    let (nodes, weights) = gauss_legendre(n_grid);
    let d = differentiation_matrix(&nodes, &weights);
    let mut b = d;
    for (i, (&x, &w)) in nodes.iter().zip(&weights).enumerate() {
        let s = ((1.0 - x * x) * w).sqrt();
        b.row_mut(i).scale_mut(s);
    }
    let mut k = b.tr_mul(&b);
    let inv_sqrt_w: Vec<f64> = weights.iter().map(|w| 1.0 / w.sqrt()).collect();
    for i in 0..n_grid {
        for j in 0..n_grid {
            k[(i, j)] *= inv_sqrt_w[i] * inv_sqrt_w[j];
        }
    }
    // Symmetrize rounding noise before the symmetric solver.
    let k = (&k + k.transpose()) * 0.5;
    let mut eig: Vec<f64> = k.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Pairs `eps_n`, `n = 1..=n_modes`, from the discretization with the
/// analytic values. Eigenvalues are kept only if a grid of half the size
/// reproduces them to `1e-8` relative (spurious modes do not converge).
pub fn legendre_spectrum_single(n_modes: usize, n_grid: usize) -> Result<Vec<LegendreMode>> {
    if n_grid < MIN_GRID {
        return Err(Error::InvalidParams(format!(
            "n_grid = {n_grid} must be >= {MIN_GRID}"
        )));
    }
    if n_modes == 0 || n_modes + 1 > n_grid / 2 {
        return Err(Error::InvalidParams(format!(
            "n_modes = {n_modes} must be in 1..{}",
            n_grid / 2
        )));
    }
    let fine = legendre_eigenvalues(n_grid);
    let coarse = legendre_eigenvalues(n_grid / 2);
    let converged: Vec<f64> = fine
        .iter()
        .copied()
        .filter(|&l| {
            coarse
                .iter()
                .any(|&c| (c - l).abs() <= 1e-8 * l.abs().max(1.0))
        })
        .collect();
    // The constant mode (eigenvalue 0) is n = 0.
    let mut modes = Vec::with_capacity(n_modes);
    for n in 1..=n_modes {
        let Some(&lambda) = converged.get(n) else {
            return Err(Error::CoarseDiscretization {
                mode: n,
                mismatch: f64::INFINITY,
            });
        };
        let mode = LegendreMode {
            n,
            epsilon_analytic: epsilon_analytic(n),
            epsilon_numeric: (0.5 * lambda.max(0.0)).sqrt(),
        };
        if mode.mismatch() > MISMATCH_LIMIT {
            return Err(Error::CoarseDiscretization {
                mode: n,
                mismatch: mode.mismatch(),
            });
        }
        modes.push(mode);
    }
    Ok(modes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_integrates_polynomials() {
        let (x, w) = gauss_legendre(12);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let m22: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(22)).sum();
        assert!((m22 - 2.0 / 23.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[1] > p[0]));
    }

    #[test]
    fn differentiation_is_exact_on_polynomials() {
        let (x, w) = gauss_legendre(16);
        let d = differentiation_matrix(&x, &w);
        let f: Vec<f64> = x.iter().map(|x| x.powi(7) - 3.0 * x * x).collect();
        for i in 0..x.len() {
            let df: f64 = (0..x.len()).map(|j| d[(i, j)] * f[j]).sum();
            let exact = 7.0 * x[i].powi(6) - 6.0 * x[i];
            assert!((df - exact).abs() < 1e-11, "{df} vs {exact}");
        }
    }

    #[test]
    fn small_grid_eigenvalues() {
        let eig = legendre_eigenvalues(20);
        for (n, l) in eig.iter().take(8).enumerate() {
            assert!((l - (n * (n + 1)) as f64).abs() < 1e-9, "n={n}: {l}");
        }
    }

    #[test]
    fn rejects_coarse_grid() {
        assert!(legendre_spectrum_single(3, 100).is_err());
        assert!(legendre_spectrum_single(0, 400).is_err());
    }
}
