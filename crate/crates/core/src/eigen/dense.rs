//! Householder reduction to tridiagonal form followed by the tridiagonal solver.

use alloc::vec;
use alloc::vec::Vec;

use super::tridiagonal::{lowest_eigenpairs_tridiagonal_with, TridiagonalMatrix};
use super::{fix_sign, EigenPair, SolverOptions, SymmetricMatrix};
use crate::math::{dot, norm, sqrt};
use crate::{Error, Result};

struct Reflector {
    /// Row/column where the reflector's support starts.
    start: usize,
    v: Vec<f64>,
    beta: f64,
}

/// Reduce a dense row-major symmetric matrix in place; returns (diag, offdiag, reflectors).
fn tridiagonalize(n: usize, a: &mut [f64]) -> (Vec<f64>, Vec<f64>, Vec<Reflector>) {
    let mut reflectors = Vec::new();
    let mut p = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let start = k + 1;
        let m = n - start;
        let mut v: Vec<f64> = (start..n).map(|i| a[i * n + k]).collect();
        let alpha = norm(&v);
        if alpha == 0.0 || (m == 1) {
            continue;
        }
        // Reflect x onto −sign(x0)·‖x‖·e1.
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vnorm2 = dot(&v, &v);
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // p = beta · A₂₂ v
        for i in 0..m {
            let row = &a[(start + i) * n + start..(start + i) * n + n];
            p[i] = beta * dot(row, &v);
        }
        let kfac = 0.5 * beta * dot(&p[..m], &v);
        for i in 0..m {
            w[i] = p[i] - kfac * v[i];
        }
        for i in 0..m {
            for j in 0..m {
                a[(start + i) * n + start + j] -= v[i] * w[j] + w[i] * v[j];
            }
        }
        a[start * n + k] = -sign * alpha;
        a[k * n + start] = -sign * alpha;
        for i in 1..m {
            a[(start + i) * n + k] = 0.0;
            a[k * n + start + i] = 0.0;
        }
        reflectors.push(Reflector { start, v, beta });
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    let off = (0..n.saturating_sub(1)).map(|i| a[(i + 1) * n + i]).collect();
    (diag, off, reflectors)
}

pub(crate) fn lowest_eigenpairs(
    m: &SymmetricMatrix,
    count: usize,
    opts: &SolverOptions,
) -> Result<Vec<EigenPair>> {
    let n = m.dim();
    let mut a = m.to_dense();
    let (diag, off, reflectors) = tridiagonalize(n, &mut a);
    let t = TridiagonalMatrix::new(diag, off)?;
    let mut pairs = lowest_eigenpairs_tridiagonal_with(&t, count, opts.rtol * 1e-2)?;

    let scale_m = m.norm_bound().max(f64::MIN_POSITIVE);
    let mut tmp = vec![0.0; n];
    for pair in &mut pairs {
        let y = &mut pair.vector;
        for r in reflectors.iter().rev() {
            let seg = &mut y[r.start..];
            let c = r.beta * dot(&r.v, seg);
            for (yi, vi) in seg.iter_mut().zip(&r.v) {
                *yi -= c * vi;
            }
        }
        let ny = norm(y);
        for yi in y.iter_mut() {
            *yi /= ny;
        }
        fix_sign(y);
        m.matvec(y, &mut tmp);
        let res = sqrt(
            tmp.iter()
                .zip(y.iter())
                .map(|(my, yi)| (my - pair.value * yi) * (my - pair.value * yi))
                .sum(),
        );
        if res > opts.rtol * scale_m {
            return Err(Error::ConvergenceFailure {
                residual: res,
                restarts: 0,
            });
        }
    }
    Ok(pairs)
}
