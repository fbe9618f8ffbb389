//! Rotating-wave Dicke model with the field term `ε(a† + a)²`, and the full
//! (counter-rotating) model with the same term.
//!
//! The quadratic field part is diagonalized by `a = μ b − ν b†`, giving a
//! `b`-mode of frequency `ω_ε = √(ω² + 4ωε)` and the Hamiltonian
//!
//! ```text
//! H_A = ω_ε b†b + ω0 Jz + (ω_ε − ω)/2
//!       + (λ/√N) [ μ (b† J− + b J+) − ν (b† J+ + b J−) ]
//! ```
//!
//! which is diagonalized in the truncated product basis `|e⟩_atoms ⊗ |m⟩_b`,
//! `m = 0..=ntr`, flattened as `e·(ntr + 1) + m`.
//!
//! Every coupling changes `e + m` by 0 or ±2, so the parity of `e + m` is
//! conserved. Ground states are found per parity block, which keeps exact
//! level crossings between the blocks clean.

use alloc::vec;
use alloc::vec::Vec;

use crate::eigen::{lowest_eigenpairs_symmetric_with, SolverOptions, SymmetricMatrix};
use crate::math::{abs, sqrt};
use crate::spin::{jminus, jplus, jz};
use crate::{Error, ModelParams, Result};

/// Bogoliubov coefficients for `ω a†a + ε(a† + a)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovData {
    pub mu: f64,
    pub nu: f64,
    /// √(ω² + 4ωε)
    pub omega_eps: f64,
    /// (ω_ε − ω)/2
    pub zero_point: f64,
}

impl BogoliubovData {
    /// μ − ν = √(ω/ω_ε)
    pub fn mu_minus_nu(&self, omega: f64) -> f64 {
        sqrt(omega / self.omega_eps)
    }
}

pub fn bogoliubov(omega: f64, epsilon: f64) -> BogoliubovData {
    let omega_eps = sqrt(omega * omega + 4.0 * omega * epsilon);
    // ν² = ((ω+2ε)/ω_ε − 1)/2, rewritten without the cancellation at small ε.
    let nu2 = 2.0 * epsilon * epsilon / (omega_eps * (omega + 2.0 * epsilon + omega_eps));
    let mu2 = 1.0 + nu2;
    BogoliubovData {
        mu: sqrt(mu2),
        nu: sqrt(nu2),
        omega_eps,
        zero_point: 2.0 * omega * epsilon / (omega_eps + omega),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruncatedModel {
    /// Rotating-wave model plus the `A²` term.
    A2,
    /// Full model `ω a†a + ω0 Jz + (2λ/√N)(a† + a)Jx + ε(a† + a)²`.
    FullDm,
}

/// Parity of `e + m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn of(e: usize, m: usize) -> Parity {
        if (e + m).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedGroundState {
    pub params: ModelParams,
    pub model: TruncatedModel,
    pub ntr: usize,
    /// `d[e][m]` flattened as `e·(ntr + 1) + m`.
    pub amplitudes: Vec<f64>,
    pub energy: f64,
    pub first_excited_energy: f64,
    /// Lowest two levels of each parity block, ascending.
    pub low_levels: Vec<f64>,
    pub parity: Parity,
    /// Gap to the next level with the ground state's parity.
    pub parity_gap: f64,
    pub bogo: BogoliubovData,
    /// Σ_e d[e][ntr]²
    pub boundary_weight: f64,
}

impl TruncatedGroundState {
    pub fn amplitude(&self, e: usize, m: usize) -> f64 {
        self.amplitudes[e * (self.ntr + 1) + m]
    }

    fn weighted<F: Fn(usize, usize) -> f64>(&self, f: F) -> f64 {
        let stride = self.ntr + 1;
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(i, d)| d * d * f(i / stride, i % stride))
            .sum()
    }

    pub fn jz_expectation(&self) -> f64 {
        let n = self.params.n_atoms;
        self.weighted(|e, _| jz(n, e))
    }

    /// ⟨b†b⟩ in the Bogoliubov frame.
    pub fn b_number_expectation(&self) -> f64 {
        self.weighted(|_, m| m as f64)
    }

    /// ⟨b²⟩ (real, equal to ⟨b†²⟩ for real amplitudes).
    pub fn b_squared_expectation(&self) -> f64 {
        let stride = self.ntr + 1;
        let mut s = 0.0;
        for e in 0..=self.params.n_atoms {
            let row = &self.amplitudes[e * stride..(e + 1) * stride];
            for m in 2..stride {
                s += row[m - 2] * row[m] * sqrt((m * (m - 1)) as f64);
            }
        }
        s
    }

    /// Physical photon number ⟨a†a⟩ = (μ² + ν²)⟨b†b⟩ + ν² − μν⟨b² + b†²⟩.
    pub fn photon_expectation(&self) -> f64 {
        let BogoliubovData { mu, nu, .. } = self.bogo;
        (mu * mu + nu * nu) * self.b_number_expectation() + nu * nu
            - 2.0 * mu * nu * self.b_squared_expectation()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|d| d * d).sum()
    }
}

/// Doubling schedule for the Fock truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub initial_ntr: usize,
    /// Required |ΔE| between successive truncations.
    pub e_tol: f64,
    /// Required weight on the highest retained boson number.
    pub b_tol: f64,
    pub ntr_cap: usize,
    pub solver: SolverOptions,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            initial_ntr: 16,
            e_tol: 1e-10,
            b_tol: 1e-10,
            ntr_cap: 4096,
            solver: SolverOptions::default(),
        }
    }
}

/// Coupling weights of `r (b† J− + b J+) + c (b† J+ + b J−)`.
#[derive(Clone, Copy)]
struct ExchangeWeights {
    rotating: f64,
    counter: f64,
}

fn exchange_weights(params: &ModelParams, bogo: &BogoliubovData, model: TruncatedModel) -> ExchangeWeights {
    let g = params.scaled_coupling();
    match model {
        TruncatedModel::A2 => ExchangeWeights {
            rotating: g * bogo.mu,
            counter: -g * bogo.nu,
        },
        // (2λ/√N)(μ−ν)(b + b†)Jx with Jx = (J+ + J−)/2.
        TruncatedModel::FullDm => {
            let w = g * bogo.mu_minus_nu(params.omega);
            ExchangeWeights {
                rotating: w,
                counter: w,
            }
        }
    }
}

/// Emit `(i, j, value)` for the diagonal (`i == j`) and each coupling once.
fn exchange_terms(
    params: &ModelParams,
    bogo: &BogoliubovData,
    ntr: usize,
    w: ExchangeWeights,
    mut emit: impl FnMut(usize, usize, f64),
) {
    let n = params.n_atoms;
    let stride = ntr + 1;
    for e in 0..=n {
        for m in 0..=ntr {
            let i = e * stride + m;
            emit(
                i,
                i,
                bogo.omega_eps * m as f64 + params.omega0 * jz(n, e) + bogo.zero_point,
            );
            if m == ntr {
                continue;
            }
            let raise = sqrt((m + 1) as f64);
            // b† J−: (e, m) → (e − 1, m + 1)
            let v = w.rotating * raise * jminus(n, e);
            if v != 0.0 {
                emit(i, (e - 1) * stride + m + 1, v);
            }
            // b† J+: (e, m) → (e + 1, m + 1)
            let v = w.counter * raise * jplus(n, e);
            if v != 0.0 {
                emit(i, (e + 1) * stride + m + 1, v);
            }
        }
    }
}

fn check_ntr(ntr: usize) -> Result<()> {
    if ntr == 0 {
        Err(Error::InvalidInput("ntr must be at least 1"))
    } else {
        Ok(())
    }
}

fn full_matrix(params: &ModelParams, ntr: usize, model: TruncatedModel) -> SymmetricMatrix {
    let bogo = bogoliubov(params.omega, params.epsilon);
    let w = exchange_weights(params, &bogo, model);
    let mut m = SymmetricMatrix::zeros((params.n_atoms + 1) * (ntr + 1));
    exchange_terms(params, &bogo, ntr, w, |i, j, v| {
        if i == j {
            m.add_diagonal(i, v)
        } else {
            m.push_coupling(i, j, v)
        }
    });
    m
}

/// The `A²` Hamiltonian on the full basis of dimension `(N + 1)(ntr + 1)`.
pub fn build_a2_hamiltonian(params: &ModelParams, ntr: usize) -> Result<SymmetricMatrix> {
    params.validate()?;
    check_ntr(ntr)?;
    Ok(full_matrix(params, ntr, TruncatedModel::A2))
}

/// The full model with the `A²` term after a π/2 spin rotation about y:
///
/// ```text
/// H = ω_ε b†b − ω0 Jx + (ω_ε − ω)/2 + (2λ/√N)(μ − ν)(b† + b) Jz
/// ```
///
/// on the same product basis. Its spectrum equals that of the unrotated form
/// used by [`solve_full_dm_fixed`].
pub fn build_full_dm_hamiltonian(params: &ModelParams, ntr: usize) -> Result<SymmetricMatrix> {
    params.validate()?;
    check_ntr(ntr)?;
    let n = params.n_atoms;
    let bogo = bogoliubov(params.omega, params.epsilon);
    let g = 2.0 * params.scaled_coupling() * bogo.mu_minus_nu(params.omega);
    let stride = ntr + 1;
    let mut h = SymmetricMatrix::zeros((n + 1) * stride);
    for e in 0..=n {
        for m in 0..=ntr {
            let i = e * stride + m;
            h.add_diagonal(i, bogo.omega_eps * m as f64 + bogo.zero_point);
            // −ω0 Jx = −(ω0/2)(J+ + J−): (e, m) ↔ (e + 1, m)
            if e < n {
                h.push_coupling(i, i + stride, -0.5 * params.omega0 * jplus(n, e));
            }
            // g (b† + b) Jz: (e, m) ↔ (e, m + 1)
            let v = g * sqrt((m + 1) as f64) * jz(n, e);
            if m < ntr && v != 0.0 {
                h.push_coupling(i, i + 1, v);
            }
        }
    }
    Ok(h)
}

struct ParityBlock {
    matrix: SymmetricMatrix,
    /// Full-basis index of each block row.
    members: Vec<usize>,
}

fn parity_block(
    params: &ModelParams,
    bogo: &BogoliubovData,
    ntr: usize,
    w: ExchangeWeights,
    parity: Parity,
) -> ParityBlock {
    let stride = ntr + 1;
    let full = (params.n_atoms + 1) * stride;
    let mut local = vec![usize::MAX; full];
    let mut members = Vec::with_capacity(full / 2 + 1);
    for (i, slot) in local.iter_mut().enumerate() {
        if Parity::of(i / stride, i % stride) == parity {
            *slot = members.len();
            members.push(i);
        }
    }
    let mut matrix = SymmetricMatrix::zeros(members.len());
    exchange_terms(params, bogo, ntr, w, |i, j, v| {
        let (li, lj) = (local[i], local[j]);
        if li == usize::MAX {
            return;
        }
        debug_assert!(lj != usize::MAX, "coupling crosses parity blocks");
        if li == lj {
            matrix.add_diagonal(li, v);
        } else {
            matrix.push_coupling(li, lj, v);
        }
    });
    ParityBlock { matrix, members }
}

fn solve_fixed(
    params: &ModelParams,
    ntr: usize,
    model: TruncatedModel,
    opts: &SolverOptions,
) -> Result<TruncatedGroundState> {
    params.validate()?;
    check_ntr(ntr)?;
    let bogo = bogoliubov(params.omega, params.epsilon);
    let w = exchange_weights(params, &bogo, model);

    let mut solved = Vec::with_capacity(2);
    for parity in [Parity::Even, Parity::Odd] {
        let block = parity_block(params, &bogo, ntr, w, parity);
        let count = block.matrix.dim().min(2);
        let pairs = lowest_eigenpairs_symmetric_with(&block.matrix, count, opts)?;
        solved.push((parity, block.members, pairs));
    }
    // Ties go to the even block.
    let ground_idx = if solved[1].2[0].value < solved[0].2[0].value { 1 } else { 0 };
    let other_idx = 1 - ground_idx;

    let mut low_levels: Vec<f64> = solved
        .iter()
        .flat_map(|(_, _, pairs)| pairs.iter().map(|p| p.value))
        .collect();
    low_levels.sort_by(f64::total_cmp);

    let (parity, members, pairs) = &solved[ground_idx];
    let energy = pairs[0].value;
    let second_same = pairs.get(1).map_or(f64::INFINITY, |p| p.value);
    let first_excited = second_same.min(solved[other_idx].2[0].value);

    let stride = ntr + 1;
    let mut amplitudes = vec![0.0; (params.n_atoms + 1) * stride];
    for (&i, &v) in members.iter().zip(&pairs[0].vector) {
        amplitudes[i] = v;
    }
    let boundary_weight = (0..=params.n_atoms)
        .map(|e| {
            let d = amplitudes[e * stride + ntr];
            d * d
        })
        .sum();

    Ok(TruncatedGroundState {
        params: *params,
        model,
        ntr,
        amplitudes,
        energy,
        first_excited_energy: first_excited,
        low_levels,
        parity: *parity,
        parity_gap: second_same - energy,
        bogo,
        boundary_weight,
    })
}

/// Ground state of the `A²` model at a fixed truncation.
pub fn solve_a2_fixed(params: &ModelParams, ntr: usize, opts: &SolverOptions) -> Result<TruncatedGroundState> {
    solve_fixed(params, ntr, TruncatedModel::A2, opts)
}

/// Ground state of the full model at a fixed truncation, solved in the
/// unrotated form `ω_ε b†b + ω0 Jz + (ω_ε − ω)/2 + (2λ/√N)(μ − ν)(b + b†)Jx`.
pub fn solve_full_dm_fixed(
    params: &ModelParams,
    ntr: usize,
    opts: &SolverOptions,
) -> Result<TruncatedGroundState> {
    solve_fixed(params, ntr, TruncatedModel::FullDm, opts)
}

fn converge(
    params: &ModelParams,
    model: TruncatedModel,
    policy: &TruncationPolicy,
) -> Result<TruncatedGroundState> {
    let mut ntr = policy.initial_ntr.max(1);
    let mut prev: Option<f64> = None;
    loop {
        let state = solve_fixed(params, ntr, model, &policy.solver)?;
        let delta = prev.map_or(f64::INFINITY, |e| abs(state.energy - e));
        if delta < policy.e_tol && state.boundary_weight < policy.b_tol {
            return Ok(state);
        }
        if ntr >= policy.ntr_cap {
            return Err(Error::TruncationExhausted {
                ntr,
                delta_energy: delta,
                boundary_weight: state.boundary_weight,
            });
        }
        prev = Some(state.energy);
        ntr = (2 * ntr).min(policy.ntr_cap);
    }
}

/// Ground state of the `A²` model, doubling `ntr` until converged.
pub fn ground_state_a2(params: &ModelParams, policy: &TruncationPolicy) -> Result<TruncatedGroundState> {
    converge(params, TruncatedModel::A2, policy)
}

/// Ground state of the full model, doubling `ntr` until converged.
pub fn ground_state_full_dm(
    params: &ModelParams,
    policy: &TruncationPolicy,
) -> Result<TruncatedGroundState> {
    converge(params, TruncatedModel::FullDm, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::lowest_eigenpairs_symmetric;

    fn params(n: usize, lambda: f64, epsilon: f64) -> ModelParams {
        ModelParams::resonant(n, lambda).with_epsilon(epsilon)
    }

    #[test]
    fn bogoliubov_examples() {
        let b = bogoliubov(1.0, 0.0);
        assert_eq!((b.mu, b.nu, b.omega_eps, b.zero_point), (1.0, 0.0, 1.0, 0.0));
        let b = bogoliubov(1.0, 1.0);
        let s5 = sqrt(5.0);
        assert!((b.omega_eps - s5).abs() < 1e-15);
        assert!((b.mu * b.mu - (3.0 / s5 + 1.0) / 2.0).abs() < 1e-14);
        assert!((b.nu * b.nu - (3.0 / s5 - 1.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn bogoliubov_identities() {
        for i in 0..=1000 {
            let eps = 10.0 * i as f64 / 1000.0;
            for omega in [0.3, 1.0, 2.5] {
                let b = bogoliubov(omega, eps);
                assert!((b.mu * b.mu - b.nu * b.nu - 1.0).abs() < 1e-12);
                assert!((b.mu * b.nu - eps / b.omega_eps).abs() < 1e-12);
                let d = b.mu - b.nu;
                assert!((d * d - omega / b.omega_eps).abs() < 1e-12);
                assert!(b.omega_eps >= omega);
                assert!((b.zero_point - 0.5 * (b.omega_eps - omega)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn decoupled_matrix_is_diagonal() {
        let p = params(3, 0.0, 0.5);
        let h = build_a2_hamiltonian(&p, 6).unwrap();
        assert!(h.couplings().is_empty());
        let b = bogoliubov(1.0, 0.5);
        let lowest = h.diagonal().iter().copied().fold(f64::INFINITY, f64::min);
        assert!((lowest - (-1.5 + b.zero_point)).abs() < 1e-15);
    }

    #[test]
    fn couplings_written_once_and_preserve_parity() {
        for (n, ntr) in [(1, 3), (4, 10), (5, 7)] {
            let h = build_a2_hamiltonian(&params(n, 1.3, 0.7), ntr).unwrap();
            let stride = ntr + 1;
            let mut seen = std::collections::BTreeSet::new();
            for &(i, j, _) in h.couplings() {
                assert!(seen.insert((i, j)), "duplicate coupling {i},{j}");
                assert_eq!(Parity::of(i / stride, i % stride), Parity::of(j / stride, j % stride));
            }
        }
    }

    #[test]
    fn jaynes_cummings_small_truncation() {
        let h = build_a2_hamiltonian(&params(1, 1.0, 0.0), 1).unwrap();
        assert_eq!(h.dim(), 4);
        let g = lowest_eigenpairs_symmetric(&h, 1).unwrap();
        assert!((g[0].value + 0.5).abs() < 1e-12);
    }

    #[test]
    fn decoupled_ground_energy_with_field_term() {
        let p = params(4, 0.0, 0.5);
        let g = ground_state_a2(&p, &TruncationPolicy::default()).unwrap();
        let expected = -2.0 + (sqrt(3.0) - 1.0) / 2.0;
        assert!((g.energy - expected).abs() < 1e-12);
        assert_eq!(g.parity, Parity::Even);
    }

    #[test]
    fn coupling_lowers_energy() {
        let pol = TruncationPolicy::default();
        let e0 = ground_state_a2(&params(4, 0.0, 0.5), &pol).unwrap().energy;
        let e1 = ground_state_a2(&params(4, 1.5, 0.5), &pol).unwrap().energy;
        assert!(e1 < e0);
    }

    #[test]
    fn truncation_monotone() {
        let p = params(3, 1.8, 0.4);
        let opts = SolverOptions::default();
        let mut last = f64::INFINITY;
        for ntr in [2, 4, 8, 16, 32, 64] {
            let e = solve_a2_fixed(&p, ntr, &opts).unwrap().energy;
            assert!(e <= last + 1e-12, "ntr {ntr}: {e} > {last}");
            last = e;
        }
    }

    #[test]
    fn truncation_cap_error() {
        let pol = TruncationPolicy {
            initial_ntr: 2,
            ntr_cap: 4,
            ..TruncationPolicy::default()
        };
        match ground_state_a2(&params(4, 3.0, 0.2), &pol) {
            Err(Error::TruncationExhausted { ntr, .. }) => assert_eq!(ntr, 4),
            other => panic!("expected TruncationExhausted, got {other:?}"),
        }
    }

    #[test]
    fn b_vacuum_photon_number() {
        let g = ground_state_a2(&params(2, 0.0, 0.8), &TruncationPolicy::default()).unwrap();
        assert_eq!(g.b_number_expectation(), 0.0);
        assert!((g.photon_expectation() - g.bogo.nu * g.bogo.nu).abs() < 1e-15);
    }

    #[test]
    fn full_dm_rotated_and_unrotated_spectra_agree() {
        for (n, lam, eps) in [(2, 0.7, 0.0), (3, 1.1, 0.4), (4, 0.3, 1.0)] {
            let p = params(n, lam, eps);
            let ntr = 12;
            let rotated = build_full_dm_hamiltonian(&p, ntr).unwrap();
            let r = lowest_eigenpairs_symmetric(&rotated, 3).unwrap();
            let s = solve_full_dm_fixed(&p, ntr, &SolverOptions::default()).unwrap();
            for (k, (pair, level)) in r.iter().zip(&s.low_levels).enumerate() {
                assert!((pair.value - level).abs() < 1e-9, "level {k}: {} vs {level}", pair.value);
            }
        }
    }

    #[test]
    fn full_dm_decoupled() {
        let p = params(3, 0.0, 0.6);
        let g = solve_full_dm_fixed(&p, 8, &SolverOptions::default()).unwrap();
        let b = bogoliubov(1.0, 0.6);
        assert!((g.energy - (-1.5 + b.zero_point)).abs() < 1e-12);
        let rotated = build_full_dm_hamiltonian(&p, 8).unwrap();
        let r = lowest_eigenpairs_symmetric(&rotated, 1).unwrap();
        assert!((r[0].value - (-1.5 + b.zero_point)).abs() < 1e-12);
    }
}
