//! Wave-packet dynamics of two-component Bose-Einstein condensates.
//!
//! Three layers share one set of types:
//!
//! * [`solver`]: split-step pseudospectral integration of the coupled
//!   Gross-Pitaevskii equations, imaginary-time ground states, and the
//!   shape-deformation diagnostic for translated (coherent) states.
//! * [`variational`]: the Gaussian-ansatz reduced model for packet centers,
//!   momenta and widths, its equilibria, and the effective potential of the
//!   relative coordinate.
//! * [`stability`]: width normal modes, center-mode eigenvalues and
//!   thresholds, the Legendre excitation spectrum and the miscibility
//!   criterion.
//!
//! All quantities use the rescaled units `hbar = m = 1` with trap
//! `V(x) = omega^2 x^2 / 2`.

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod grid;
pub mod observables;
pub mod params;
pub mod selftest;
pub mod solver;
pub mod stability;
pub mod spectral;
pub mod state;
pub mod variational;

pub use error::{Error, Result};
pub use grid::{make_grid, Grid};
pub use observables::{observables, Observables};
pub use params::Params;
pub use state::{gaussian_packet, Component, Packet, TwoComponentState};
