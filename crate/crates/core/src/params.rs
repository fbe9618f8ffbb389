use crate::{Error, Result};

/// Physical inputs shared by every model (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Field frequency ω.
    pub omega: f64,
    /// Atomic level splitting ω0.
    pub omega0: f64,
    /// Atom-field coupling λ.
    pub lambda: f64,
    /// Strength ε of the `(a† + a)²` term. Ignored by the rotating-wave model.
    pub epsilon: f64,
    /// Number of two-level atoms N.
    pub n_atoms: usize,
}

impl ModelParams {
    pub fn new(omega: f64, omega0: f64, lambda: f64, epsilon: f64, n_atoms: usize) -> Result<Self> {
        let p = ModelParams {
            omega,
            omega0,
            lambda,
            epsilon,
            n_atoms,
        };
        p.validate()?;
        Ok(p)
    }

    /// ω = ω0 = 1, ε = 0.
    pub fn resonant(n_atoms: usize, lambda: f64) -> Self {
        ModelParams {
            omega: 1.0,
            omega0: 1.0,
            lambda,
            epsilon: 0.0,
            n_atoms,
        }
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        ModelParams { lambda, ..self }
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        ModelParams { epsilon, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        // Written so that NaN fails every check.
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::InvalidInput("omega must be positive and finite"));
        }
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(Error::InvalidInput("omega0 must be positive and finite"));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidInput("lambda must be non-negative and finite"));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidInput("epsilon must be non-negative and finite"));
        }
        if self.n_atoms == 0 {
            return Err(Error::InvalidInput("n_atoms must be at least 1"));
        }
        Ok(())
    }

    /// Coupling per atom, λ/√N.
    pub(crate) fn scaled_coupling(&self) -> f64 {
        self.lambda / crate::math::sqrt(self.n_atoms as f64)
    }
}
