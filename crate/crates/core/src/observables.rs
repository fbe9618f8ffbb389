//! Ground-state diagnostics: Berry phases, fidelity, gap, and transition detection.
//!
//! The Berry phases of the loops generated by `Jz` and `a†a` reduce to
//! `γ1 = 2π⟨Jz⟩` and `γ2 = 2π⟨a†a⟩`.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::a2::TruncatedGroundState;
use crate::math::{abs, rem_euclid};
use crate::rwa::RwaGroundState;
use crate::{Error, Result};

/// Expectation values every ground-state representation provides.
pub trait GroundStateView {
    fn n_atoms(&self) -> usize;
    fn energy(&self) -> f64;
    fn first_excited_energy(&self) -> f64;
    fn jz_expectation(&self) -> f64;
    /// Physical photon number ⟨a†a⟩.
    fn photon_expectation(&self) -> f64;
}

impl GroundStateView for RwaGroundState {
    fn n_atoms(&self) -> usize {
        self.params.n_atoms
    }
    fn energy(&self) -> f64 {
        self.energy
    }
    fn first_excited_energy(&self) -> f64 {
        self.first_excited_energy
    }
    fn jz_expectation(&self) -> f64 {
        self.sector.jz_expectation(self.params.n_atoms)
    }
    fn photon_expectation(&self) -> f64 {
        self.sector.photon_expectation()
    }
}

impl GroundStateView for TruncatedGroundState {
    fn n_atoms(&self) -> usize {
        self.params.n_atoms
    }
    fn energy(&self) -> f64 {
        self.energy
    }
    fn first_excited_energy(&self) -> f64 {
        self.first_excited_energy
    }
    fn jz_expectation(&self) -> f64 {
        TruncatedGroundState::jz_expectation(self)
    }
    fn photon_expectation(&self) -> f64 {
        TruncatedGroundState::photon_expectation(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerryPhase {
    /// 2π × expectation value.
    pub raw: f64,
    /// `raw` reduced to [0, 2π).
    pub reduced: f64,
    pub per_atom_raw: f64,
    /// `raw / N` reduced to [0, 2π).
    pub per_atom_reduced: f64,
}

impl BerryPhase {
    pub fn from_expectation(expectation: f64, n_atoms: usize) -> Self {
        let raw = TAU * expectation;
        let per_atom_raw = raw / n_atoms as f64;
        BerryPhase {
            raw,
            reduced: rem_euclid(raw, TAU),
            per_atom_raw,
            per_atom_reduced: rem_euclid(per_atom_raw, TAU),
        }
    }
}

/// γ1 = 2π⟨Jz⟩.
pub fn berry_phase_jz<S: GroundStateView>(state: &S) -> BerryPhase {
    BerryPhase::from_expectation(state.jz_expectation(), state.n_atoms())
}

/// γ2 = 2π⟨a†a⟩ with the physical photon number.
pub fn berry_phase_photon<S: GroundStateView>(state: &S) -> BerryPhase {
    BerryPhase::from_expectation(state.photon_expectation(), state.n_atoms())
}

/// γ2 evaluated with the Bogoliubov-mode number ⟨b†b⟩.
pub fn berry_phase_photon_b_frame(state: &TruncatedGroundState) -> BerryPhase {
    BerryPhase::from_expectation(state.b_number_expectation(), state.params.n_atoms)
}

/// States that can be overlapped: `|⟨a|b⟩|`.
pub trait Overlap {
    fn overlap(&self, other: &Self) -> Result<f64>;
}

impl Overlap for RwaGroundState {
    fn overlap(&self, other: &Self) -> Result<f64> {
        if self.params.n_atoms != other.params.n_atoms {
            return Err(Error::BasisMismatch);
        }
        // Different excitation sectors are orthogonal.
        if self.sector.excitation != other.sector.excitation {
            return Ok(0.0);
        }
        let s: f64 = self
            .sector
            .coeffs
            .iter()
            .zip(&other.sector.coeffs)
            .map(|(a, b)| a * b)
            .sum();
        Ok(abs(s))
    }
}

impl Overlap for TruncatedGroundState {
    fn overlap(&self, other: &Self) -> Result<f64> {
        let same_frame = self.params.n_atoms == other.params.n_atoms
            && self.model == other.model
            && self.params.omega == other.params.omega
            && self.params.epsilon == other.params.epsilon;
        if !same_frame {
            return Err(Error::BasisMismatch);
        }
        // Zero-pad to the common truncation: only m ≤ min(ntr) contributes.
        let common = self.ntr.min(other.ntr) + 1;
        let (sa, sb) = (self.ntr + 1, other.ntr + 1);
        let mut s = 0.0;
        for e in 0..=self.params.n_atoms {
            for m in 0..common {
                s += self.amplitudes[e * sa + m] * other.amplitudes[e * sb + m];
            }
        }
        Ok(abs(s))
    }
}

/// Ground-state fidelity `F = |⟨ψ(λ)|ψ(λ′)⟩|`, clamped to [0, 1].
pub fn fidelity<S: Overlap>(a: &S, b: &S) -> Result<f64> {
    Ok(a.overlap(b)?.clamp(0.0, 1.0))
}

/// Gap between the first excited and ground levels, floored at 0.
pub fn energy_gap<S: GroundStateView>(state: &S) -> f64 {
    (state.first_excited_energy() - state.energy()).max(0.0)
}

/// Central difference `[γ1(λ + h) − γ1(λ − h)] / 2h` of a phase evaluator.
pub fn berry_phase_derivative<F>(mut gamma1: F, lambda: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(h > 0.0) {
        return Err(Error::InvalidInput("derivative step must be positive"));
    }
    let up = gamma1(lambda + h)?;
    let down = gamma1(lambda - h)?;
    Ok((up - down) / (2.0 * h))
}

/// One grid point of a coupling sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub lambda: f64,
    pub epsilon: f64,
    pub n_atoms: usize,
    pub energy: f64,
    pub gap: f64,
    pub gamma1: BerryPhase,
    /// Physical-frame γ2 / N.
    pub gamma2_per_atom: f64,
    /// Bogoliubov-frame γ2 / N (truncated models only).
    pub gamma2_b_per_atom: Option<f64>,
    /// `F(λ, λ + δλ)`; absent when not computed.
    pub fidelity: Option<f64>,
    pub dgamma1_dlambda: Option<f64>,
    /// Ground-sector excitation number (rotating-wave model only).
    pub excitation: Option<usize>,
    /// Converged truncation (truncated models only).
    pub ntr: Option<usize>,
}

/// Midpoints `λ + δλ/2` of grid pairs whose fidelity falls below `f_threshold`.
///
/// `delta_lambda` is the separation used for the fidelity column. Records must
/// be sorted by λ for a single (ε, N).
pub fn detect_transitions_from_sweep(
    records: &[SweepRecord],
    delta_lambda: f64,
    f_threshold: f64,
) -> Result<Vec<f64>> {
    if records.is_empty() {
        return Err(Error::EmptySweep);
    }
    Ok(records
        .iter()
        .filter(|r| r.fidelity.is_some_and(|f| f < f_threshold))
        .map(|r| r.lambda + 0.5 * delta_lambda)
        .collect())
}

/// First index `i` with `|values[i + 1] − values[i]| > threshold`.
pub fn first_jump_index(values: &[f64], threshold: f64) -> Option<usize> {
    values
        .windows(2)
        .position(|w| abs(w[1] - w[0]) > threshold)
}

/// First index `i` whose step `values[i + 1] − values[i]` departs from the mean
/// of its neighbouring steps by more than `threshold` and by at least as much as
/// either neighbour does.
///
/// Unlike [`first_jump_index`] this ignores smooth drift, so it still finds small
/// discontinuities on a steep background.
pub fn first_abrupt_step(values: &[f64], threshold: f64) -> Option<usize> {
    let steps: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let n = steps.len();
    // Local trend: neighbour mean inside, linear extrapolation at the ends.
    let excess = |i: usize| -> f64 {
        let trend = match (i, n) {
            (_, 1) => 0.0,
            (0, 2) => steps[1],
            (0, _) => 2.0 * steps[1] - steps[2],
            (1, 2) => steps[0],
            (i, _) if i + 1 == n => 2.0 * steps[n - 2] - steps[n - 3],
            (i, _) => 0.5 * (steps[i - 1] + steps[i + 1]),
        };
        abs(steps[i] - trend)
    };
    let ex: Vec<f64> = (0..steps.len()).map(excess).collect();
    (0..ex.len()).find(|&i| {
        ex[i] > threshold && (i == 0 || ex[i] >= ex[i - 1]) && (i + 1 == ex.len() || ex[i] >= ex[i + 1])
    })
}

/// Locate the minimum of `f` on `[lo, hi]`: grid scan with `steps` intervals,
/// then golden-section refinement of the best bracket down to `tol`.
pub fn locate_minimum<F>(mut f: F, lo: f64, hi: f64, steps: usize, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || steps < 2 || !(tol > 0.0) {
        return Err(Error::InvalidInput("need lo < hi, steps >= 2, tol > 0"));
    }
    let h = (hi - lo) / steps as f64;
    let mut best = (lo, f(lo)?);
    let mut best_i = 0;
    for i in 1..=steps {
        let x = lo + h * i as f64;
        let y = f(x)?;
        if y < best.1 {
            best = (x, y);
            best_i = i;
        }
    }
    let mut a = lo + h * best_i.saturating_sub(1) as f64;
    let mut b = (lo + h * (best_i + 1) as f64).min(hi);
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    let y = f(x)?;
    Ok(if y <= best.1 { (x, y) } else { best })
}
