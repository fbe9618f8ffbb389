//! Built-in consistency checks, run by `dicke selftest`.

use dicke_core::a2::{bogoliubov, build_a2_hamiltonian, build_full_dm_hamiltonian, solve_full_dm_fixed};
use dicke_core::eigen::{lowest_eigenpairs_symmetric_with, SolverOptions};
use dicke_core::model::{solve, ModelKind, SolveOptions};
use dicke_core::observables::{fidelity, GroundStateView};
use dicke_core::rwa::{find_transitions, ground_state, ScanPolicy};
use dicke_core::ModelParams;

pub struct Check {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bogoliubov_identities() -> Result<(), String> {
    for &eps in &[0.0, 1e-6, 1e-2, 0.5, 3.0] {
        let b = bogoliubov(1.0, eps);
        let norm = b.mu * b.mu - b.nu * b.nu;
        let we = (1.0 + 4.0 * eps).sqrt();
        ensure((norm - 1.0).abs() < 1e-14, || format!("eps={eps}: mu^2 - nu^2 = {norm}"))?;
        ensure((b.omega_eps - we).abs() < 1e-14, || format!("eps={eps}: omega_eps = {}", b.omega_eps))?;
        let d = b.mu - b.nu - b.mu_minus_nu(1.0);
        ensure(d.abs() < 1e-12, || format!("eps={eps}: mu - nu off by {d}"))?;
    }
    Ok(())
}

fn a2_reduces_to_rwa() -> Result<(), String> {
    for &lam in &[0.4, 1.3, 2.2] {
        let p = ModelParams::resonant(2, lam);
        let opts = SolveOptions::default();
        let rwa = solve(ModelKind::Rwa, &p, &opts).map_err(|e| e.to_string())?;
        let a2 = solve(ModelKind::A2, &p, &opts).map_err(|e| e.to_string())?;
        let d = (rwa.energy() - a2.energy()).abs();
        ensure(d < 1e-8, || format!("lambda={lam}: energies differ by {d:e}"))?;
    }
    Ok(())
}

fn charge_rule() -> Result<(), String> {
    for &lam in &[0.5, 1.7, 3.1] {
        let p = ModelParams::resonant(4, lam);
        let g = ground_state(&p, &ScanPolicy::default()).map_err(|e| e.to_string())?;
        let sum = g.photon_expectation() + g.jz_expectation() + 2.0;
        let d = (sum - g.excitation() as f64).abs();
        ensure(d < 1e-10, || format!("lambda={lam}: charge off by {d:e}"))?;
    }
    Ok(())
}

fn single_atom_crossings() -> Result<(), String> {
    let t = find_transitions(&ModelParams::resonant(1, 0.0), 0.5, 3.0, 1e-9, &ScanPolicy::default())
        .map_err(|e| e.to_string())?;
    let expect = [1.0, 1.0 + std::f64::consts::SQRT_2];
    ensure(t.len() == 2, || format!("found {} crossings", t.len()))?;
    for (got, want) in t.iter().zip(expect) {
        ensure((got - want).abs() < 1e-6, || format!("crossing at {got}, expected {want}"))?;
    }
    Ok(())
}

fn fidelity_dichotomy() -> Result<(), String> {
    let at = |lam| ground_state(&ModelParams::resonant(1, lam), &ScanPolicy::default());
    let f_same = fidelity(&at(0.5).map_err(|e| e.to_string())?, &at(0.6).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let f_cross = fidelity(&at(0.9).map_err(|e| e.to_string())?, &at(1.1).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(f_same > 1.0 - 1e-9, || format!("same sector fidelity {f_same}"))?;
    ensure(f_cross == 0.0, || format!("cross sector fidelity {f_cross}"))
}

fn dense_matches_lanczos() -> Result<(), String> {
    let m = build_a2_hamiltonian(&ModelParams::resonant(3, 1.2).with_epsilon(0.3), 40).map_err(|e| e.to_string())?;
    let dense = SolverOptions {
        dense_threshold: usize::MAX,
        ..SolverOptions::default()
    };
    let sparse = SolverOptions {
        dense_threshold: 0,
        ..SolverOptions::default()
    };
    let a = lowest_eigenpairs_symmetric_with(&m, 3, &dense).map_err(|e| e.to_string())?;
    let b = lowest_eigenpairs_symmetric_with(&m, 3, &sparse).map_err(|e| e.to_string())?;
    for (x, y) in a.iter().zip(&b) {
        let d = (x.value - y.value).abs();
        ensure(d < 1e-9, || format!("eigenvalues {} vs {}", x.value, y.value))?;
    }
    Ok(())
}

fn full_dm_frames_agree() -> Result<(), String> {
    let p = ModelParams::resonant(2, 0.9).with_epsilon(0.25);
    let ntr = 48;
    let rotated = build_full_dm_hamiltonian(&p, ntr).map_err(|e| e.to_string())?;
    let dense = SolverOptions {
        dense_threshold: usize::MAX,
        ..SolverOptions::default()
    };
    let direct = lowest_eigenpairs_symmetric_with(&rotated, 1, &dense).map_err(|e| e.to_string())?;
    let blocked = solve_full_dm_fixed(&p, ntr, &SolverOptions::default()).map_err(|e| e.to_string())?;
    let d = (direct[0].value - blocked.energy).abs();
    ensure(d < 1e-8, || format!("ground energies differ by {d:e}"))
}

type CheckFn = fn() -> Result<(), String>;

pub fn run_all() -> Vec<Check> {
    let checks: [(&'static str, CheckFn); 7] = [
        ("bogoliubov_identities", bogoliubov_identities),
        ("a2_reduces_to_rwa", a2_reduces_to_rwa),
        ("charge_rule", charge_rule),
        ("single_atom_crossings", single_atom_crossings),
        ("fidelity_dichotomy", fidelity_dichotomy),
        ("dense_matches_lanczos", dense_matches_lanczos),
        ("full_dm_frames_agree", full_dm_frames_agree),
    ];
    checks
        .into_iter()
        .map(|(name, f)| Check { name, outcome: f() })
        .collect()
}
