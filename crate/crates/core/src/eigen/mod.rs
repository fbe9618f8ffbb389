//! Symmetric eigensolvers.
//!
//! [`lowest_eigenpairs_tridiagonal`] uses Sturm-sequence bisection for the
//! eigenvalues and inverse iteration for the vectors. [`lowest_eigenpairs_symmetric`]
//! reduces small matrices to tridiagonal form with Householder reflections and
//! runs Lanczos with full reorthogonalization on large sparse ones.

mod dense;
mod lanczos;
mod symmetric;
mod tridiagonal;

use alloc::vec::Vec;

pub use symmetric::SymmetricMatrix;
pub use tridiagonal::{
    lowest_eigenpairs_tridiagonal, lowest_eigenpairs_tridiagonal_with,
    lowest_eigenvalues_tridiagonal, TridiagonalMatrix,
};

use crate::math::abs;
use crate::{Error, Result};

/// An eigenvalue with its unit eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Residual tolerance relative to a norm bound of the matrix.
    pub rtol: f64,
    /// Dimensions above this use Lanczos instead of dense reduction.
    pub dense_threshold: usize,
    /// Largest Krylov basis before an explicit restart.
    pub max_krylov: usize,
    pub max_restarts: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            rtol: 1e-10,
            dense_threshold: 2048,
            max_krylov: 400,
            max_restarts: 10,
        }
    }
}

/// Lowest `count` eigenpairs of a symmetric matrix, ascending, with default options.
pub fn lowest_eigenpairs_symmetric(m: &SymmetricMatrix, count: usize) -> Result<Vec<EigenPair>> {
    lowest_eigenpairs_symmetric_with(m, count, &SolverOptions::default())
}

pub fn lowest_eigenpairs_symmetric_with(
    m: &SymmetricMatrix,
    count: usize,
    opts: &SolverOptions,
) -> Result<Vec<EigenPair>> {
    if count == 0 || count > m.dim() {
        return Err(Error::InvalidInput("eigenpair count must be in 1..=dim"));
    }
    if m.dim() <= opts.dense_threshold {
        dense::lowest_eigenpairs(m, count, opts)
    } else {
        lanczos::lowest_eigenpairs(m, count, opts)
    }
}

/// Flip `v` so that its largest-magnitude component is positive (first index wins ties).
pub(crate) fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    let mut best_abs = -1.0;
    for (i, x) in v.iter().enumerate() {
        if abs(*x) > best_abs {
            best_abs = abs(*x);
            best = i;
        }
    }
    if !v.is_empty() && v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Deterministic, well-spread start vector for iterative methods.
pub(crate) fn start_vector(dim: usize, salt: u64) -> Vec<f64> {
    // Weyl sequence on the golden ratio; not random, just free of structure.
    const PHI: f64 = 0.618_033_988_749_894_9;
    let offset = 0.5 + 0.31 * salt as f64;
    (0..dim)
        .map(|i| {
            let t = (i as f64 + offset) * PHI;
            0.5 + (t - libm::floor(t))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_convention() {
        let mut v = [0.1, -0.9, 0.3];
        fix_sign(&mut v);
        assert_eq!(v, [-0.1, 0.9, -0.3]);
        let mut tie = [-0.5, 0.5];
        fix_sign(&mut tie);
        assert_eq!(tie, [0.5, -0.5]);
    }

    #[test]
    fn rejects_bad_count() {
        let m = SymmetricMatrix::from_diagonal(&[1.0, 2.0]);
        assert!(lowest_eigenpairs_symmetric(&m, 0).is_err());
        assert!(lowest_eigenpairs_symmetric(&m, 3).is_err());
    }

    #[test]
    fn diagonal_lowest() {
        let m = SymmetricMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
        let pairs = lowest_eigenpairs_symmetric(&m, 1).unwrap();
        assert_eq!(pairs[0].value, 1.0);
        assert_eq!(pairs[0].vector, alloc::vec![0.0, 1.0, 0.0]);
    }
}
