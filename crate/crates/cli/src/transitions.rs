//! Transition searches for every model family.

use dicke_core::model::{solve, ModelKind, SolveOptions};
use dicke_core::rwa::find_transitions;
use dicke_core::{Error, ModelParams, Result};
use rayon::prelude::*;

use crate::config::lambda_grid;

/// Coupling interval, coarse grid spacing and bisection tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    pub tol: f64,
}

/// Couplings in `[lo, hi]` where the ground state's symmetry label changes.
///
/// The rotating-wave model bisects on `L` directly. The truncated models scan a
/// grid of spacing `step` for changes of the `e + m` parity and bisect each
/// bracket down to `tol`.
pub fn locate_transitions(
    model: ModelKind,
    template: &ModelParams,
    range: ScanRange,
    opts: &SolveOptions,
    pool: &rayon::ThreadPool,
) -> Result<Vec<f64>> {
    let ScanRange { lo, hi, step, tol } = range;
    if model == ModelKind::Rwa {
        return find_transitions(template, lo, hi, tol, &opts.scan);
    }
    if !(lo < hi) || !(step > 0.0) || !(tol > 0.0) {
        return Err(Error::InvalidInput("need lo < hi and positive step, tol"));
    }
    let label = |lam: f64| solve(model, &template.with_lambda(lam), opts).map(|s| s.symmetry_label());
    let grid = lambda_grid(lo, hi, step);
    pool.install(|| {
        let labels: Vec<usize> = grid.par_iter().map(|&l| label(l)).collect::<Result<_>>()?;
        let brackets: Vec<(f64, usize, f64, usize)> = (0..grid.len() - 1)
            .filter(|&i| labels[i] != labels[i + 1])
            .map(|i| (grid[i], labels[i], grid[i + 1], labels[i + 1]))
            .collect();
        brackets
            .par_iter()
            .map(|&(mut a, la, mut b, _)| {
                while b - a > tol {
                    let mid = 0.5 * (a + b);
                    if label(mid)? == la {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                Ok(0.5 * (a + b))
            })
            .collect()
    })
}
