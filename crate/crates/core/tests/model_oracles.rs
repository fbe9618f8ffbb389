//! Whole-model checks against dense diagonalization in a plain Fock basis.

use dicke_core::a2::{build_a2_hamiltonian, ground_state_a2, solve_a2_fixed, TruncationPolicy};
use dicke_core::eigen::{lowest_eigenpairs_symmetric, SolverOptions};
use dicke_core::rwa::{build_sector_matrix, ground_state, ScanPolicy};
use dicke_core::ModelParams;
use nalgebra::{DMatrix, SymmetricEigen};

/// Dense `ω a†a + ω0 Jz + (λ/√N)(a†J− + aJ+) + ε(a + a†)²` with `photons` quanta.
fn dense_fock_hamiltonian(p: &ModelParams, photons: usize) -> DMatrix<f64> {
    let n = p.n_atoms;
    let dp = photons + 1;
    let da = n + 1;
    let mut a = DMatrix::zeros(dp, dp);
    for k in 1..dp {
        a[(k - 1, k)] = (k as f64).sqrt();
    }
    let mut jp = DMatrix::zeros(da, da);
    let mut jzm = DMatrix::zeros(da, da);
    for e in 0..da {
        jzm[(e, e)] = e as f64 - n as f64 / 2.0;
        if e < n {
            jp[(e + 1, e)] = (((e + 1) * (n - e)) as f64).sqrt();
        }
    }
    let ip = DMatrix::<f64>::identity(dp, dp);
    let ia = DMatrix::<f64>::identity(da, da);
    let ad = a.transpose();
    let jm = jp.transpose();
    let x = &a + &ad;
    let g = p.lambda / (n as f64).sqrt();
    (&ad * &a).kronecker(&ia) * p.omega
        + ip.kronecker(&jzm) * p.omega0
        + (ad.kronecker(&jm) + a.kronecker(&jp)) * g
        + (&x * &x).kronecker(&ia) * p.epsilon
}

fn dense_lowest(h: DMatrix<f64>) -> f64 {
    SymmetricEigen::new(h).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

#[test]
fn sector_scan_matches_fock_diagonalization() {
    for n in 1..=3 {
        for lam in [0.0, 0.4, 0.95, 1.05, 1.6, 2.2, 3.0] {
            let p = ModelParams::resonant(n, lam);
            let e_scan = ground_state(&p, &ScanPolicy::default()).unwrap().energy;
            let e_dense = dense_lowest(dense_fock_hamiltonian(&p, 80));
            assert!((e_scan - e_dense).abs() < 1e-9, "N={n} λ={lam}: {e_scan} vs {e_dense}");
        }
    }
}

#[test]
fn detuned_sector_scan_matches_fock_diagonalization() {
    let p = ModelParams::new(1.3, 0.7, 1.9, 0.0, 3).unwrap();
    let e_scan = ground_state(&p, &ScanPolicy::default()).unwrap().energy;
    let e_dense = dense_lowest(dense_fock_hamiltonian(&p, 80));
    assert!((e_scan - e_dense).abs() < 1e-9);
}

#[test]
fn patience_scan_agrees_with_exhaustive_scan() {
    let exhaustive = ScanPolicy {
        exhaustive: true,
        l_max: Some(200),
        ..ScanPolicy::default()
    };
    for n in [1, 2, 5, 16] {
        for i in 0..40 {
            let lam = 0.1 * i as f64;
            let p = ModelParams::resonant(n, lam);
            let a = ground_state(&p, &ScanPolicy::default()).unwrap();
            let b = ground_state(&p, &exhaustive).unwrap();
            assert_eq!(a.excitation(), b.excitation());
            assert_eq!(a.energy, b.energy);
            assert_eq!(a.first_excited_energy, b.first_excited_energy);
        }
    }
}

#[test]
fn field_term_matches_fock_diagonalization() {
    // The Bogoliubov-frame truncation against the plain Fock basis, both converged.
    for (n, lam, eps) in [(1, 0.8, 0.5), (2, 1.4, 1.0), (3, 2.0, 0.1)] {
        let p = ModelParams::resonant(n, lam).with_epsilon(eps);
        let e_a2 = ground_state_a2(&p, &TruncationPolicy::default()).unwrap().energy;
        let e_dense = dense_lowest(dense_fock_hamiltonian(&p, 120));
        assert!((e_a2 - e_dense).abs() < 1e-8, "{e_a2} vs {e_dense}");
    }
}

#[test]
fn zero_epsilon_spectrum_is_union_of_sectors() {
    let n = 3;
    let ntr = 40;
    let p = ModelParams::resonant(n, 1.3);
    let h = build_a2_hamiltonian(&p, ntr).unwrap();
    let got = lowest_eigenpairs_symmetric(&h, 6).unwrap();
    let mut sectors = Vec::new();
    for l in 0..20 {
        let m = build_sector_matrix(&p, l);
        let d = m.dim();
        let mut dense = vec![0.0; d * d];
        for i in 0..d {
            dense[i * d + i] = m.diag()[i];
            if i + 1 < d {
                dense[i * d + i + 1] = m.offdiag()[i];
                dense[(i + 1) * d + i] = m.offdiag()[i];
            }
        }
        sectors.extend(SymmetricEigen::new(DMatrix::from_row_slice(d, d, &dense)).eigenvalues.iter().copied());
    }
    sectors.sort_by(f64::total_cmp);
    for k in 0..6 {
        assert!((got[k].value - sectors[k]).abs() < 1e-8);
    }
}

#[test]
fn lanczos_and_dense_agree_on_field_term_blocks() {
    let p = ModelParams::resonant(4, 1.7).with_epsilon(0.3);
    let dense = solve_a2_fixed(&p, 60, &SolverOptions::default()).unwrap();
    let sparse_opts = SolverOptions {
        dense_threshold: 16,
        ..SolverOptions::default()
    };
    let sparse = solve_a2_fixed(&p, 60, &sparse_opts).unwrap();
    assert!((dense.energy - sparse.energy).abs() < 1e-10);
    assert!((dense.first_excited_energy - sparse.first_excited_energy).abs() < 1e-10);
    let overlap: f64 = dense.amplitudes.iter().zip(&sparse.amplitudes).map(|(a, b)| a * b).sum();
    assert!((overlap.abs() - 1.0).abs() < 1e-9);
}
