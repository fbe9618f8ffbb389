//! Exact solution of the rotating-wave Dicke model
//! `H = ω a†a + ω0 Jz + (λ/√N)(a† J− + a J+)`.
//!
//! `H` conserves `L = a†a + Jz + N/2`. In the sector with `L` excitations the
//! basis is `|L − e⟩_photon ⊗ |e⟩_atoms` for `e = 0..=min(N, L)` and the
//! Hamiltonian is tridiagonal in `e`.

use alloc::vec::Vec;

use crate::eigen::{
    lowest_eigenpairs_tridiagonal, lowest_eigenvalues_tridiagonal, TridiagonalMatrix,
};
use crate::math::sqrt;
use crate::spin::{jplus, jz};
use crate::{Error, ModelParams, Result};

/// Ground state of one excitation sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorState {
    /// Excitation number L.
    pub excitation: usize,
    /// Amplitude on `|L − e⟩ ⊗ |e⟩`, indexed by `e`.
    pub coeffs: Vec<f64>,
}

impl SectorState {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn jz_expectation(&self, n_atoms: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(e, c)| c * c * jz(n_atoms, e))
            .sum()
    }

    pub fn photon_expectation(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(e, c)| c * c * (self.excitation - e) as f64)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RwaGroundState {
    pub params: ModelParams,
    pub sector: SectorState,
    pub energy: f64,
    /// Second-lowest level over all scanned sectors.
    pub first_excited_energy: f64,
}

impl RwaGroundState {
    pub fn excitation(&self) -> usize {
        self.sector.excitation
    }
}

/// How far `ground_state` scans in `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanPolicy {
    /// Stop after this many consecutive sectors fail to lower the running minimum.
    pub patience: usize,
    /// Hard cap on L; `None` means 64·N.
    pub l_max: Option<usize>,
    /// Scan every sector up to the cap regardless of `patience`.
    pub exhaustive: bool,
}

impl Default for ScanPolicy {
    fn default() -> Self {
        ScanPolicy {
            patience: 5,
            l_max: None,
            exhaustive: false,
        }
    }
}

impl ScanPolicy {
    fn cap(&self, n_atoms: usize) -> usize {
        self.l_max.unwrap_or(64 * n_atoms)
    }
}

pub fn sector_dim(n_atoms: usize, excitation: usize) -> usize {
    n_atoms.min(excitation) + 1
}

/// Tridiagonal sector Hamiltonian over `e = 0..=min(N, L)`.
pub fn build_sector_matrix(params: &ModelParams, excitation: usize) -> TridiagonalMatrix {
    let n = params.n_atoms;
    let dim = sector_dim(n, excitation);
    let g = params.scaled_coupling();
    let diag = (0..dim)
        .map(|e| params.omega * (excitation - e) as f64 + params.omega0 * jz(n, e))
        .collect();
    // a J+ takes (photons L−e, e) to (L−e−1, e+1).
    let off = (0..dim - 1)
        .map(|e| g * sqrt((excitation - e) as f64) * jplus(n, e))
        .collect();
    TridiagonalMatrix::new(diag, off).expect("sector dimensions are consistent")
}

pub fn sector_ground(params: &ModelParams, excitation: usize) -> Result<(f64, SectorState)> {
    params.validate()?;
    let m = build_sector_matrix(params, excitation);
    let pair = lowest_eigenpairs_tridiagonal(&m, 1)?.remove(0);
    Ok((
        pair.value,
        SectorState {
            excitation,
            coeffs: pair.vector,
        },
    ))
}

/// Global ground state: scan sectors upward in `L` and keep the lowest.
/// Exact ties go to the smaller `L`.
pub fn ground_state(params: &ModelParams, policy: &ScanPolicy) -> Result<RwaGroundState> {
    params.validate()?;
    let l_max = policy.cap(params.n_atoms);
    let mut best_l = 0;
    let mut best = f64::INFINITY;
    let mut since_improved = 0;
    // (lowest, second-lowest) per scanned sector.
    let mut levels: Vec<(f64, f64)> = Vec::new();
    let mut stopped_early = false;

    for l in 0..=l_max {
        let m = build_sector_matrix(params, l);
        let count = m.dim().min(2);
        let vals = lowest_eigenvalues_tridiagonal(&m, count)?;
        let second = vals.get(1).copied().unwrap_or(f64::INFINITY);
        levels.push((vals[0], second));
        if vals[0] < best {
            best = vals[0];
            best_l = l;
            since_improved = 0;
        } else {
            since_improved += 1;
        }
        if !policy.exhaustive && since_improved >= policy.patience {
            stopped_early = true;
            break;
        }
    }
    let still_improving = if policy.exhaustive {
        best_l == l_max
    } else {
        !stopped_early
    };
    if still_improving {
        return Err(Error::ScanExhausted { l_max });
    }

    let first_excited = levels
        .iter()
        .enumerate()
        .map(|(l, &(lo, second))| if l == best_l { second } else { lo })
        .fold(f64::INFINITY, f64::min);

    let (energy, sector) = sector_ground(params, best_l)?;
    Ok(RwaGroundState {
        params: *params,
        sector,
        energy,
        first_excited_energy: first_excited,
    })
}

/// Ground-sector excitation number at each coupling of an ascending grid.
pub fn excitation_staircase(
    template: &ModelParams,
    lambda_grid: &[f64],
    policy: &ScanPolicy,
) -> Result<Vec<(f64, usize)>> {
    if lambda_grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidInput("lambda grid must be sorted ascending"));
    }
    lambda_grid
        .iter()
        .map(|&lam| {
            ground_state(&template.with_lambda(lam), policy).map(|g| (lam, g.excitation()))
        })
        .collect()
}

/// Couplings in `[lo, hi]` where the ground-sector `L` changes, each located by
/// bisection to a bracket no wider than `tol` and reported at the bracket midpoint.
///
/// Relies on `L(λ)` being non-decreasing: a bracket with equal end labels holds
/// no transition.
pub fn find_transitions(
    template: &ModelParams,
    lo: f64,
    hi: f64,
    tol: f64,
    policy: &ScanPolicy,
) -> Result<Vec<f64>> {
    if !(lo < hi) {
        return Err(Error::InvalidInput("lambda_lo must be below lambda_hi"));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive"));
    }
    let label = |lam: f64| ground_state(&template.with_lambda(lam), policy).map(|g| g.excitation());
    let mut out = Vec::new();
    // Explicit stack of brackets, processed left to right.
    let mut stack = alloc::vec![(lo, label(lo)?, hi, label(hi)?)];
    while let Some((a, la, b, lb)) = stack.pop() {
        if la == lb {
            continue;
        }
        if b - a <= tol {
            out.push(0.5 * (a + b));
            continue;
        }
        let mid = 0.5 * (a + b);
        let lm = label(mid)?;
        stack.push((mid, lm, b, lb));
        stack.push((a, la, mid, lm));
    }
    Ok(out)
}
