//! Uniform entry point over the three model families.

use crate::a2::{ground_state_a2, ground_state_full_dm, Parity, TruncatedGroundState, TruncationPolicy};
use crate::observables::{GroundStateView, Overlap};
use crate::rwa::{ground_state, RwaGroundState, ScanPolicy};
use crate::{Error, ModelParams, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Rotating-wave model, solved sector by sector.
    Rwa,
    /// Rotating-wave model with the `A²` term.
    A2,
    /// Full model with the `A²` term.
    FullDm,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Rwa => "rwa",
            ModelKind::A2 => "a2",
            ModelKind::FullDm => "full_dm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolveOptions {
    pub scan: ScanPolicy,
    pub truncation: TruncationPolicy,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroundState {
    Rwa(RwaGroundState),
    Truncated(TruncatedGroundState),
}

impl GroundState {
    pub fn excitation(&self) -> Option<usize> {
        match self {
            GroundState::Rwa(g) => Some(g.excitation()),
            GroundState::Truncated(_) => None,
        }
    }

    pub fn ntr(&self) -> Option<usize> {
        match self {
            GroundState::Rwa(_) => None,
            GroundState::Truncated(g) => Some(g.ntr),
        }
    }

    /// Discrete label whose change marks a level crossing: `L` for the
    /// rotating-wave model, the `e + m` parity otherwise.
    pub fn symmetry_label(&self) -> usize {
        match self {
            GroundState::Rwa(g) => g.excitation(),
            GroundState::Truncated(g) => match g.parity {
                Parity::Even => 0,
                Parity::Odd => 1,
            },
        }
    }
}

impl GroundStateView for GroundState {
    fn n_atoms(&self) -> usize {
        match self {
            GroundState::Rwa(g) => g.n_atoms(),
            GroundState::Truncated(g) => g.n_atoms(),
        }
    }
    fn energy(&self) -> f64 {
        match self {
            GroundState::Rwa(g) => g.energy,
            GroundState::Truncated(g) => g.energy,
        }
    }
    fn first_excited_energy(&self) -> f64 {
        match self {
            GroundState::Rwa(g) => g.first_excited_energy,
            GroundState::Truncated(g) => g.first_excited_energy,
        }
    }
    fn jz_expectation(&self) -> f64 {
        match self {
            GroundState::Rwa(g) => GroundStateView::jz_expectation(g),
            GroundState::Truncated(g) => g.jz_expectation(),
        }
    }
    fn photon_expectation(&self) -> f64 {
        match self {
            GroundState::Rwa(g) => GroundStateView::photon_expectation(g),
            GroundState::Truncated(g) => g.photon_expectation(),
        }
    }
}

impl Overlap for GroundState {
    fn overlap(&self, other: &Self) -> Result<f64> {
        match (self, other) {
            (GroundState::Rwa(a), GroundState::Rwa(b)) => a.overlap(b),
            (GroundState::Truncated(a), GroundState::Truncated(b)) => a.overlap(b),
            _ => Err(Error::BasisMismatch),
        }
    }
}

pub fn solve(kind: ModelKind, params: &ModelParams, opts: &SolveOptions) -> Result<GroundState> {
    match kind {
        ModelKind::Rwa => ground_state(params, &opts.scan).map(GroundState::Rwa),
        ModelKind::A2 => ground_state_a2(params, &opts.truncation).map(GroundState::Truncated),
        ModelKind::FullDm => {
            ground_state_full_dm(params, &opts.truncation).map(GroundState::Truncated)
        }
    }
}
