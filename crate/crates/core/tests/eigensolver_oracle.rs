//! Eigensolvers against nalgebra's dense symmetric QR.

use dicke_core::eigen::{
    lowest_eigenpairs_symmetric, lowest_eigenpairs_symmetric_with, lowest_eigenpairs_tridiagonal,
    EigenPair, SolverOptions, SymmetricMatrix, TridiagonalMatrix,
};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle_values(dim: usize, dense: &[f64]) -> Vec<f64> {
    let m = DMatrix::from_row_slice(dim, dim, dense);
    let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn random_tridiagonal(rng: &mut ChaCha8Rng, d: usize) -> TridiagonalMatrix {
    let diag = (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect();
    let off = (0..d - 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
    TridiagonalMatrix::new(diag, off).unwrap()
}

fn tri_dense(t: &TridiagonalMatrix) -> Vec<f64> {
    let d = t.dim();
    let mut a = vec![0.0; d * d];
    for i in 0..d {
        a[i * d + i] = t.diag()[i];
        if i + 1 < d {
            a[i * d + i + 1] = t.offdiag()[i];
            a[(i + 1) * d + i] = t.offdiag()[i];
        }
    }
    a
}

fn random_sparse(rng: &mut ChaCha8Rng, d: usize, per_row: usize) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(d);
    for i in 0..d {
        m.add_diagonal(i, rng.gen_range(-5.0..5.0));
    }
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..d {
        for _ in 0..per_row {
            let j = rng.gen_range(0..d);
            let key = (i.min(j), i.max(j));
            if i != j && seen.insert(key) {
                m.push_coupling(i, j, rng.gen_range(-1.0..1.0));
            }
        }
    }
    m
}

fn check_pairs(pairs: &[EigenPair], matvec: impl Fn(&[f64]) -> Vec<f64>, norm: f64, rtol: f64) {
    for (i, p) in pairs.iter().enumerate() {
        let nv: f64 = p.vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((nv - 1.0).abs() < 1e-12);
        let mv = matvec(&p.vector);
        let res: f64 = mv
            .iter()
            .zip(&p.vector)
            .map(|(a, b)| (a - p.value * b).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(res <= rtol * norm, "residual {res:e} for pair {i}");
        for q in &pairs[..i] {
            let d: f64 = p.vector.iter().zip(&q.vector).map(|(a, b)| a * b).sum();
            assert!(d.abs() <= 1e-9, "overlap {d:e}");
        }
    }
    for w in pairs.windows(2) {
        assert!(w[0].value <= w[1].value);
    }
}

#[test]
fn random_tridiagonal_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let t = random_tridiagonal(&mut rng, 8);
    let pairs = lowest_eigenpairs_tridiagonal(&t, 8).unwrap();
    let oracle = oracle_values(8, &tri_dense(&t));
    for (p, o) in pairs.iter().zip(&oracle) {
        assert!((p.value - o).abs() < 1e-10);
    }
}

#[test]
fn sparse_fifty_matches_oracle_on_both_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let m = random_sparse(&mut rng, 50, 3);
    let oracle = oracle_values(50, &m.to_dense());
    let dense = lowest_eigenpairs_symmetric(&m, 3).unwrap();
    let lanczos_opts = SolverOptions {
        dense_threshold: 10,
        ..SolverOptions::default()
    };
    let lanczos = lowest_eigenpairs_symmetric_with(&m, 3, &lanczos_opts).unwrap();
    for k in 0..3 {
        assert!((dense[k].value - oracle[k]).abs() < 1e-9);
        assert!((lanczos[k].value - oracle[k]).abs() < 1e-9);
    }
}

#[test]
fn randomized_property_suite() {
    // 200 instances across both solvers and both symmetric paths.
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        match seed % 3 {
            0 => {
                let d = rng.gen_range(1..40);
                let t = random_tridiagonal(&mut rng, d);
                let count = rng.gen_range(1..=d);
                let pairs = lowest_eigenpairs_tridiagonal(&t, count).unwrap();
                let dense = tri_dense(&t);
                let mv = |x: &[f64]| {
                    let mut y = vec![0.0; d];
                    t.matvec(x, &mut y);
                    y
                };
                check_pairs(&pairs, mv, t.norm_bound(), 1e-10);
                let oracle = oracle_values(d, &dense);
                for (p, o) in pairs.iter().zip(&oracle) {
                    assert!((p.value - o).abs() < 1e-10 * t.norm_bound().max(1.0));
                }
                // Sturm count agrees with the ordering.
                for (k, p) in pairs.iter().enumerate() {
                    let slack = 1e-9 * t.norm_bound().max(1.0);
                    assert!(t.count_below(p.value - slack) <= k);
                    assert!(t.count_below(p.value + slack) > k);
                }
            }
            _ => {
                let d = rng.gen_range(20..120);
                let m = random_sparse(&mut rng, d, 4);
                let count = rng.gen_range(1..=3);
                let opts = SolverOptions {
                    dense_threshold: if seed % 3 == 1 { usize::MAX } else { 0 },
                    ..SolverOptions::default()
                };
                let pairs = lowest_eigenpairs_symmetric_with(&m, count, &opts).unwrap();
                let mv = |x: &[f64]| {
                    let mut y = vec![0.0; d];
                    m.matvec(x, &mut y);
                    y
                };
                check_pairs(&pairs, mv, m.norm_bound(), 1e-10);
                let oracle = oracle_values(d, &m.to_dense());
                for (p, o) in pairs.iter().zip(&oracle) {
                    assert!((p.value - o).abs() < 1e-9, "seed {seed}: {} vs {o}", p.value);
                }
            }
        }
    }
}

#[test]
fn repeated_solves_are_bit_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = random_sparse(&mut rng, 300, 4);
    let opts = SolverOptions {
        dense_threshold: 100,
        ..SolverOptions::default()
    };
    let a = lowest_eigenpairs_symmetric_with(&m, 2, &opts).unwrap();
    let b = lowest_eigenpairs_symmetric_with(&m, 2, &opts).unwrap();
    assert_eq!(a, b);
    let t = random_tridiagonal(&mut rng, 30);
    assert_eq!(
        lowest_eigenpairs_tridiagonal(&t, 5).unwrap(),
        lowest_eigenpairs_tridiagonal(&t, 5).unwrap()
    );
}
