//! Sweep configuration: a JSON file plus command-line overrides.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use dicke_core::a2::TruncationPolicy;
use dicke_core::model::{ModelKind, SolveOptions};
use dicke_core::ModelParams;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModelChoice {
    Rwa,
    A2,
    #[value(name = "full_dm", alias = "full-dm")]
    FullDm,
}

impl From<ModelChoice> for ModelKind {
    fn from(m: ModelChoice) -> Self {
        match m {
            ModelChoice::Rwa => ModelKind::Rwa,
            ModelChoice::A2 => ModelKind::A2,
            ModelChoice::FullDm => ModelKind::FullDm,
        }
    }
}

/// Columns that cost extra solves. Energy, gap, phases and `L` are always written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Energy,
    Gap,
    Gamma1,
    Gamma2,
    Fidelity,
    Staircase,
    Derivative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Energy change between successive truncations.
    pub e_tol: f64,
    /// Weight on the highest retained boson number.
    pub b_tol: f64,
    /// Fidelity below this marks a transition.
    pub f_threshold: f64,
    /// Step of the central difference for ∂γ1/∂λ.
    pub h: f64,
    /// Separation for the fidelity column; defaults to the grid step.
    pub delta_lambda: Option<f64>,
    /// Bisection width for transition searches.
    pub transition_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            e_tol: 1e-10,
            b_tol: 1e-10,
            f_threshold: 0.5,
            h: 1e-3,
            delta_lambda: None,
            transition_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub model: ModelChoice,
    pub n_atoms: Vec<usize>,
    pub omega: f64,
    pub omega0: f64,
    pub epsilon_list: Vec<f64>,
    pub lambda_start: f64,
    pub lambda_stop: f64,
    pub lambda_step: f64,
    pub outputs: BTreeSet<OutputKind>,
    pub tolerances: Tolerances,
    pub ntr_cap: usize,
    pub jobs: Option<usize>,
    pub output_path: PathBuf,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            model: ModelChoice::Rwa,
            n_atoms: vec![1],
            omega: 1.0,
            omega0: 1.0,
            epsilon_list: vec![0.0],
            lambda_start: 0.0,
            lambda_stop: 2.0,
            lambda_step: 0.01,
            outputs: [
                OutputKind::Energy,
                OutputKind::Gap,
                OutputKind::Gamma1,
                OutputKind::Gamma2,
                OutputKind::Fidelity,
                OutputKind::Staircase,
                OutputKind::Derivative,
            ]
            .into_iter()
            .collect(),
            tolerances: Tolerances::default(),
            ntr_cap: 4096,
            jobs: None,
            output_path: PathBuf::from("out"),
        }
    }
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if self.n_atoms.is_empty() || self.n_atoms.contains(&0) {
            return bad("n_atoms must be a nonempty list of positive integers");
        }
        if !(self.lambda_step > 0.0) {
            return bad("lambda_step must be positive");
        }
        if !(self.lambda_start < self.lambda_stop) {
            return bad("lambda_start must be below lambda_stop");
        }
        if !(self.lambda_start >= 0.0) {
            return bad("lambda_start must be non-negative");
        }
        if self.epsilon_list.is_empty() {
            return bad("epsilon_list must be nonempty");
        }
        if self.model == ModelChoice::Rwa && self.epsilon_list != [0.0] {
            return bad("the rwa model takes epsilon_list = [0]");
        }
        if self.ntr_cap == 0 {
            return bad("ntr_cap must be positive");
        }
        let t = &self.tolerances;
        if !(t.h > 0.0) || !(t.transition_tol > 0.0) || t.delta_lambda.is_some_and(|d| !(d > 0.0)) {
            return bad("h, transition_tol and delta_lambda must be positive");
        }
        for &eps in &self.epsilon_list {
            ModelParams::new(self.omega, self.omega0, self.lambda_start, eps, 1)
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(())
    }

    /// `start + i·step` up to `stop` (inclusive within rounding).
    pub fn lambda_grid(&self) -> Vec<f64> {
        lambda_grid(self.lambda_start, self.lambda_stop, self.lambda_step)
    }

    pub fn delta_lambda(&self) -> f64 {
        self.tolerances.delta_lambda.unwrap_or(self.lambda_step)
    }

    pub fn template(&self, n_atoms: usize, epsilon: f64) -> ModelParams {
        ModelParams {
            omega: self.omega,
            omega0: self.omega0,
            lambda: self.lambda_start,
            epsilon,
            n_atoms,
        }
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            truncation: TruncationPolicy {
                e_tol: self.tolerances.e_tol,
                b_tol: self.tolerances.b_tol,
                ntr_cap: self.ntr_cap,
                ..TruncationPolicy::default()
            },
            ..SolveOptions::default()
        }
    }

    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }
}

pub fn lambda_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| start + step * i as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut c = SweepConfig {
            model: ModelChoice::A2,
            n_atoms: vec![4],
            epsilon_list: vec![0.0, 0.5, 1.0],
            ..SweepConfig::default()
        };
        c.tolerances.delta_lambda = Some(1e-4);
        let text = c.to_json();
        let back = SweepConfig::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(SweepConfig::from_json(&back.to_json()).unwrap(), back);
    }

    #[test]
    fn partial_json_uses_defaults() {
        let c = SweepConfig::from_json(r#"{"model": "full_dm", "n_atoms": [8]}"#).unwrap();
        assert_eq!(c.model, ModelChoice::FullDm);
        assert_eq!(c.lambda_step, 0.01);
        assert!(SweepConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn validation() {
        assert!(SweepConfig::default().validate().is_ok());
        let c = SweepConfig {
            lambda_step: 0.0,
            ..SweepConfig::default()
        };
        assert!(c.validate().is_err());
        let c = SweepConfig {
            epsilon_list: vec![0.5],
            ..SweepConfig::default()
        };
        assert!(c.validate().is_err());
        let c = SweepConfig {
            lambda_start: 2.0,
            lambda_stop: 1.0,
            ..SweepConfig::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn grid_endpoints() {
        let g = lambda_grid(0.5, 1.5, 0.001);
        assert_eq!(g.len(), 1001);
        assert!((g[1000] - 1.5).abs() < 1e-12);
        assert_eq!(lambda_grid(0.0, 1.0, 0.3).len(), 4);
    }
}
