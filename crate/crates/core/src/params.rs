use crate::error::{Error, Result};

/// Physical parameters of the rescaled coupled GPE (hbar = m = 1).
///
/// `omega` is the trap frequency of `V(x) = omega^2 x^2 / 2`. Couplings
/// must be finite and non-negative; attractive interactions are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub g_alpha: f64,
    pub g_beta: f64,
    pub g_alphabeta: f64,
    pub omega: f64,
    pub n_alpha: f64,
    pub n_beta: f64,
}

/// Names accepted by [`Params::set`] and [`Params::get`].
pub const PARAM_NAMES: [&str; 6] = [
    "g_alpha",
    "g_beta",
    "g_alphabeta",
    "omega",
    "n_alpha",
    "n_beta",
];

impl Default for Params {
    fn default() -> Self {
        Params {
            g_alpha: 0.0,
            g_beta: 0.0,
            g_alphabeta: 0.0,
            omega: 1.0,
            n_alpha: 1.0,
            n_beta: 1.0,
        }
    }
}

impl Params {
    pub fn new(
        g_alpha: f64,
        g_beta: f64,
        g_alphabeta: f64,
        omega: f64,
        n_alpha: f64,
        n_beta: f64,
    ) -> Result<Self> {
        let p = Params {
            g_alpha,
            g_beta,
            g_alphabeta,
            omega,
            n_alpha,
            n_beta,
        };
        p.validate()?;
        Ok(p)
    }

    /// Non-interacting pair with unit particle numbers.
    pub fn ideal(omega: f64) -> Result<Self> {
        Params::new(0.0, 0.0, 0.0, omega, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, g) in [
            ("g_alpha", self.g_alpha),
            ("g_beta", self.g_beta),
            ("g_alphabeta", self.g_alphabeta),
        ] {
            if !g.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {g} is not finite")));
            }
            if g < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} = {g}: attractive couplings are not supported"
                )));
            }
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidParams(format!(
                "omega = {} must be positive",
                self.omega
            )));
        }
        for (name, n) in [("n_alpha", self.n_alpha), ("n_beta", self.n_beta)] {
            if !(n.is_finite() && n > 0.0) {
                return Err(Error::InvalidParams(format!("{name} = {n} must be positive")));
            }
        }
        Ok(())
    }

    pub fn total_number(&self) -> f64 {
        self.n_alpha + self.n_beta
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "g_alpha" => self.g_alpha,
            "g_beta" => self.g_beta,
            "g_alphabeta" => self.g_alphabeta,
            "omega" => self.omega,
            "n_alpha" => self.n_alpha,
            "n_beta" => self.n_beta,
            _ => return None,
        })
    }

    /// Returns a copy with one named field replaced, validated.
    pub fn with(&self, name: &str, value: f64) -> Result<Self> {
        let mut p = *self;
        p.set(name, value)?;
        p.validate()?;
        Ok(p)
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = match name {
            "g_alpha" => &mut self.g_alpha,
            "g_beta" => &mut self.g_beta,
            "g_alphabeta" => &mut self.g_alphabeta,
            "omega" => &mut self.omega,
            "n_alpha" => &mut self.n_alpha,
            "n_beta" => &mut self.n_beta,
            _ => return Err(Error::InvalidParams(format!("unknown parameter `{name}`"))),
        };
        *slot = value;
        Ok(())
    }
}
