use alloc::vec;
use alloc::vec::Vec;

use super::{fix_sign, start_vector, EigenPair};
use crate::math::{abs, axpy_neg, dot, norm, scale};
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Symmetric tridiagonal matrix stored as its diagonal and one off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidInput("tridiagonal matrix must have dimension >= 1"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidInput("off-diagonal length must be dim - 1"));
        }
        Ok(TridiagonalMatrix { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        tri_matvec(&self.diag, &self.offdiag, x, y);
    }

    /// Infinity-norm bound, max_i Σ_j |T_ij|.
    pub fn norm_bound(&self) -> f64 {
        norm_bound(&self.diag, &self.offdiag)
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: f64) -> usize {
        let e2: Vec<f64> = self.offdiag.iter().map(|e| e * e).collect();
        sturm_count(&self.diag, &e2, x, pivmin(&e2))
    }
}

fn tri_matvec(d: &[f64], e: &[f64], x: &[f64], y: &mut [f64]) {
    let n = d.len();
    for i in 0..n {
        let mut s = d[i] * x[i];
        if i > 0 {
            s += e[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            s += e[i] * x[i + 1];
        }
        y[i] = s;
    }
}

fn norm_bound(d: &[f64], e: &[f64]) -> f64 {
    let n = d.len();
    (0..n)
        .map(|i| {
            let mut s = abs(d[i]);
            if i > 0 {
                s += abs(e[i - 1]);
            }
            if i + 1 < n {
                s += abs(e[i]);
            }
            s
        })
        .fold(0.0, f64::max)
}

fn pivmin(e2: &[f64]) -> f64 {
    f64::MIN_POSITIVE * e2.iter().copied().fold(1.0, f64::max)
}

fn sturm_count(d: &[f64], e2: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if abs(q) < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        q = d[i] - x - e2[i - 1] / q;
        if abs(q) < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Unreduced diagonal blocks `[start, end)` after splitting at negligible couplings.
fn split_blocks(d: &[f64], e: &[f64]) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for (i, ei) in e.iter().enumerate() {
        if abs(*ei) <= 0.5 * EPS * (abs(d[i]) + abs(d[i + 1])) {
            blocks.push((start, i + 1));
            start = i + 1;
        }
    }
    blocks.push((start, d.len()));
    blocks
}

/// The `k`-th smallest eigenvalue (0-based) of an unreduced block by bisection.
fn kth_eigenvalue(d: &[f64], e: &[f64], e2: &[f64], k: usize) -> f64 {
    let n = d.len();
    if n == 1 {
        return d[0];
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += abs(e[i - 1]);
        }
        if i + 1 < n {
            r += abs(e[i]);
        }
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    let pm = pivmin(e2);
    let margin = 2.1 * EPS * n as f64 * abs(lo).max(abs(hi)) + 2.0 * pm;
    lo -= margin;
    hi += margin;

    for _ in 0..512 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 2.0 * EPS * abs(lo).max(abs(hi)) + pm {
            break;
        }
        if sturm_count(d, e2, mid, pm) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// (value, block index, index within block)
type BlockValue = (f64, usize, usize);

/// Lowest values of every block, merged and truncated to `count`, with the block ranges.
fn lowest_values(d: &[f64], e: &[f64], count: usize) -> (Vec<(usize, usize)>, Vec<BlockValue>) {
    let blocks = split_blocks(d, e);
    let mut all = Vec::new();
    for (b, &(s, t)) in blocks.iter().enumerate() {
        let bd = &d[s..t];
        let be = &e[s..t - 1];
        let be2: Vec<f64> = be.iter().map(|x| x * x).collect();
        for k in 0..count.min(t - s) {
            all.push((kth_eigenvalue(bd, be, &be2, k), b, k));
        }
    }
    all.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    all.truncate(count);
    (blocks, all)
}

/// The `count` smallest eigenvalues, ascending, without eigenvectors.
pub fn lowest_eigenvalues_tridiagonal(m: &TridiagonalMatrix, count: usize) -> Result<Vec<f64>> {
    if count == 0 || count > m.dim() {
        return Err(Error::InvalidInput("eigenvalue count must be in 1..=dim"));
    }
    let (_, vals) = lowest_values(&m.diag, &m.offdiag, count);
    Ok(vals.into_iter().map(|v| v.0).collect())
}

/// The `count` smallest eigenpairs, ascending, with orthonormal sign-fixed vectors.
pub fn lowest_eigenpairs_tridiagonal(m: &TridiagonalMatrix, count: usize) -> Result<Vec<EigenPair>> {
    lowest_eigenpairs_tridiagonal_with(m, count, 1e-10)
}

pub fn lowest_eigenpairs_tridiagonal_with(
    m: &TridiagonalMatrix,
    count: usize,
    rtol: f64,
) -> Result<Vec<EigenPair>> {
    if count == 0 || count > m.dim() {
        return Err(Error::InvalidInput("eigenpair count must be in 1..=dim"));
    }
    let n = m.dim();
    let (blocks, vals) = lowest_values(&m.diag, &m.offdiag, count);

    let mut out: Vec<Option<EigenPair>> = vec![None; vals.len()];
    for (b, &(s, t)) in blocks.iter().enumerate() {
        // Selected values of this block are a prefix of its spectrum, in order.
        let picked: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].1 == b).collect();
        if picked.is_empty() {
            continue;
        }
        let bd = &m.diag[s..t];
        let be = &m.offdiag[s..t - 1];
        let values: Vec<f64> = picked.iter().map(|&i| vals[i].0).collect();
        let vecs = block_vectors(bd, be, &values, rtol)?;
        for (&slot, local) in picked.iter().zip(vecs) {
            let mut vector = vec![0.0; n];
            vector[s..t].copy_from_slice(&local);
            fix_sign(&mut vector);
            out[slot] = Some(EigenPair {
                value: vals[slot].0,
                vector,
            });
        }
    }
    Ok(out.into_iter().map(|p| p.expect("every value assigned")).collect())
}

/// LU factorization of `T − σI` with partial pivoting.
struct ShiftedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    l: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(d: &[f64], e: &[f64], sigma: f64, tiny: f64) -> Self {
        let n = d.len();
        let mut lu = ShiftedLu {
            u0: vec![0.0; n],
            u1: vec![0.0; n],
            u2: vec![0.0; n],
            l: vec![0.0; n.saturating_sub(1)],
            swapped: vec![false; n.saturating_sub(1)],
        };
        let mut dk = d[0] - sigma;
        let mut uk = if n > 1 { e[0] } else { 0.0 };
        for k in 0..n.saturating_sub(1) {
            let sub = e[k];
            let next_diag = d[k + 1] - sigma;
            let next_up = if k + 2 < n { e[k + 1] } else { 0.0 };
            if abs(dk) >= abs(sub) {
                if dk == 0.0 {
                    dk = tiny;
                }
                let l = sub / dk;
                lu.l[k] = l;
                lu.u0[k] = dk;
                lu.u1[k] = uk;
                dk = next_diag - l * uk;
                uk = next_up;
            } else {
                let l = dk / sub;
                lu.l[k] = l;
                lu.swapped[k] = true;
                lu.u0[k] = sub;
                lu.u1[k] = next_diag;
                lu.u2[k] = next_up;
                dk = uk - l * next_diag;
                uk = -l * next_up;
            }
        }
        if abs(dk) < tiny {
            dk = if dk < 0.0 { -tiny } else { tiny };
        }
        lu.u0[n - 1] = dk;
        lu
    }

    fn solve(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        for k in 0..n.saturating_sub(1) {
            if self.swapped[k] {
                rhs.swap(k, k + 1);
            }
            rhs[k + 1] -= self.l[k] * rhs[k];
        }
        for k in (0..n).rev() {
            let mut s = rhs[k];
            if k + 1 < n {
                s -= self.u1[k] * rhs[k + 1];
            }
            if k + 2 < n {
                s -= self.u2[k] * rhs[k + 2];
            }
            rhs[k] = s / self.u0[k];
        }
    }
}

/// Inverse iteration for the given ascending eigenvalues of one unreduced block.
fn block_vectors(d: &[f64], e: &[f64], values: &[f64], rtol: f64) -> Result<Vec<Vec<f64>>> {
    const MAX_ITERS: usize = 8;
    const MAX_RESTARTS: usize = 4;

    let n = d.len();
    if n == 1 {
        return Ok(vec![vec![1.0]]);
    }
    let scale_t = norm_bound(d, e).max(f64::MIN_POSITIVE);
    let tiny = EPS * scale_t;
    // Close eigenvalues are reorthogonalized against each other.
    let cluster_gap = 1e-3 * scale_t;

    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(values.len());
    let mut cluster_start = 0;
    let mut prev_shift = f64::NEG_INFINITY;
    let mut tmp = vec![0.0; n];

    for (j, &value) in values.iter().enumerate() {
        if j > 0 && value - values[j - 1] > cluster_gap {
            cluster_start = j;
        }
        let mut shift = value;
        if j > cluster_start && shift <= prev_shift + 10.0 * EPS * abs(shift).max(scale_t) {
            shift = prev_shift + 10.0 * EPS * abs(shift).max(scale_t);
        }
        prev_shift = shift;
        let lu = ShiftedLu::new(d, e, shift, tiny);

        let mut found = None;
        let mut last_residual = f64::INFINITY;
        'restarts: for restart in 0..MAX_RESTARTS {
            let mut x = start_vector(n, (j + 7 * restart) as u64);
            let nx = norm(&x);
            scale(&mut x, 1.0 / nx);
            for _ in 0..MAX_ITERS {
                lu.solve(&mut x);
                for _ in 0..2 {
                    for v in &vectors[cluster_start..] {
                        let c = dot(v, &x);
                        axpy_neg(&mut x, c, v);
                    }
                }
                let nx = norm(&x);
                if !(nx > 0.0 && nx.is_finite()) {
                    continue 'restarts;
                }
                scale(&mut x, 1.0 / nx);
                tri_matvec(d, e, &x, &mut tmp);
                axpy_neg(&mut tmp, value, &x);
                last_residual = norm(&tmp);
                if last_residual <= rtol * scale_t {
                    found = Some(x);
                    break 'restarts;
                }
            }
        }
        match found {
            Some(x) => vectors.push(x),
            None => {
                return Err(Error::ConvergenceFailure {
                    residual: last_residual,
                    restarts: MAX_RESTARTS,
                })
            }
        }
    }
    Ok(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(d: &[f64], e: &[f64]) -> TridiagonalMatrix {
        TridiagonalMatrix::new(d.to_vec(), e.to_vec()).unwrap()
    }

    #[test]
    fn two_by_two() {
        let pairs = lowest_eigenpairs_tridiagonal(&tri(&[2.0, 2.0], &[1.0]), 2).unwrap();
        assert!((pairs[0].value - 1.0).abs() < 1e-14);
        assert!((pairs[1].value - 3.0).abs() < 1e-14);
        let s = core::f64::consts::FRAC_1_SQRT_2;
        // Components have equal magnitude, so only the relative sign is fixed.
        assert!((pairs[0].vector[0].abs() - s).abs() < 1e-12);
        assert!((pairs[0].vector[0] + pairs[0].vector[1]).abs() < 1e-12);
    }

    #[test]
    fn one_by_one() {
        let pairs = lowest_eigenpairs_tridiagonal(&tri(&[-4.5], &[]), 1).unwrap();
        assert_eq!(pairs[0].value, -4.5);
        assert_eq!(pairs[0].vector, vec![1.0]);
    }

    #[test]
    fn shape_errors() {
        assert!(TridiagonalMatrix::new(vec![], vec![]).is_err());
        assert!(TridiagonalMatrix::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(lowest_eigenpairs_tridiagonal(&tri(&[1.0], &[]), 2).is_err());
    }

    #[test]
    fn fully_degenerate_split_matrix() {
        // Zero couplings: every eigenvalue equal, vectors must still be orthonormal.
        let m = tri(&[0.0; 5], &[0.0; 4]);
        let pairs = lowest_eigenpairs_tridiagonal(&m, 5).unwrap();
        for (i, p) in pairs.iter().enumerate() {
            assert_eq!(p.value, 0.0);
            assert_eq!(p.vector[i], 1.0);
        }
    }

    #[test]
    fn close_pair_stays_orthogonal() {
        // Wilkinson W21+: top eigenvalue pairs agree to ~1e-14 of each other.
        let n = 21;
        let d: Vec<f64> = (0..n).map(|i| (10.0 - i as f64).abs()).collect();
        let e = vec![1.0; n - 1];
        let m = tri(&d, &e);
        let pairs = lowest_eigenpairs_tridiagonal(&m, n).unwrap();
        for i in 0..n {
            for j in 0..i {
                assert!(dot(&pairs[i].vector, &pairs[j].vector).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn sturm_count_matches_values() {
        let m = tri(&[1.0, -2.0, 3.0, 0.5], &[0.7, -1.1, 0.3]);
        let vals = lowest_eigenvalues_tridiagonal(&m, 4).unwrap();
        for (k, v) in vals.iter().enumerate() {
            assert_eq!(m.count_below(*v - 1e-9), k);
            assert_eq!(m.count_below(*v + 1e-9), k + 1);
        }
    }
}
