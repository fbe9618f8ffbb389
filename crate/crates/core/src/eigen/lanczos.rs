//! Lanczos with full reorthogonalization and explicit restarts.

use alloc::vec;
use alloc::vec::Vec;

use super::tridiagonal::{lowest_eigenpairs_tridiagonal_with, TridiagonalMatrix};
use super::{fix_sign, start_vector, EigenPair, SolverOptions, SymmetricMatrix};
use crate::math::{abs, axpy_neg, dot, norm, scale};
use crate::{Error, Result};

const CHECK_EVERY: usize = 10;

fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) {
    for _ in 0..2 {
        for v in basis {
            let c = dot(v, w);
            axpy_neg(w, c, v);
        }
    }
}

pub(crate) fn lowest_eigenpairs(
    m: &SymmetricMatrix,
    count: usize,
    opts: &SolverOptions,
) -> Result<Vec<EigenPair>> {
    let n = m.dim();
    let csr = m.to_csr();
    let scale_m = m.norm_bound().max(f64::MIN_POSITIVE);
    let tol = opts.rtol * scale_m;
    let kmax = opts.max_krylov.max(count + CHECK_EVERY).min(n);

    let mut v0 = start_vector(n, 0);
    let mut worst = f64::INFINITY;
    let mut salt = 1u64;
    let mut tmp = vec![0.0; n];

    for _restart in 0..=opts.max_restarts {
        let nv = norm(&v0);
        scale(&mut v0, 1.0 / nv);
        let mut basis: Vec<Vec<f64>> = vec![v0.clone()];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut ritz: Option<Vec<EigenPair>> = None;

        loop {
            let j = basis.len() - 1;
            let mut w = vec![0.0; n];
            csr.matvec(&basis[j], &mut w);
            let a = dot(&basis[j], &w);
            alpha.push(a);
            orthogonalize(&basis, &mut w);
            let b = norm(&w);

            let k = alpha.len();
            let exhausted = k >= kmax;
            let breakdown = b <= 1e-14 * scale_m;
            if k >= count && (k.is_multiple_of(CHECK_EVERY) || exhausted || breakdown) {
                let t = TridiagonalMatrix::new(alpha.clone(), beta.clone())?;
                let small = lowest_eigenpairs_tridiagonal_with(&t, count, 1e-12)?;
                let converged = breakdown
                    || small
                        .iter()
                        .all(|p| abs(b * p.vector[k - 1]) <= 0.5 * tol);
                if converged || exhausted {
                    ritz = Some(small);
                    break;
                }
            }
            if breakdown {
                // Invariant subspace found before `count` vectors; continue in its complement.
                let mut fresh = start_vector(n, salt);
                salt += 1;
                orthogonalize(&basis, &mut fresh);
                let nf = norm(&fresh);
                if nf <= 1e-12 {
                    break;
                }
                scale(&mut fresh, 1.0 / nf);
                beta.push(0.0);
                basis.push(fresh);
            } else {
                beta.push(b);
                scale(&mut w, 1.0 / b);
                basis.push(w);
            }
        }

        let small = match ritz {
            Some(s) => s,
            None => return Err(Error::InvalidInput("Krylov space smaller than requested count")),
        };

        let mut pairs = Vec::with_capacity(count);
        worst = 0.0;
        for p in &small {
            let mut y = vec![0.0; n];
            for (coef, v) in p.vector.iter().zip(&basis) {
                axpy_neg(&mut y, -coef, v);
            }
            let ny = norm(&y);
            scale(&mut y, 1.0 / ny);
            fix_sign(&mut y);
            csr.matvec(&y, &mut tmp);
            let theta = dot(&y, &tmp);
            axpy_neg(&mut tmp, theta, &y);
            let res = norm(&tmp);
            worst = worst.max(res);
            pairs.push(EigenPair {
                value: theta,
                vector: y,
            });
        }
        if worst <= tol {
            return Ok(pairs);
        }
        // Restart from the combined Ritz vectors.
        v0 = vec![0.0; n];
        for p in &pairs {
            axpy_neg(&mut v0, -1.0, &p.vector);
        }
    }
    Err(Error::ConvergenceFailure {
        residual: worst,
        restarts: opts.max_restarts,
    })
}
