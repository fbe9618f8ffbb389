use alloc::vec;
use alloc::vec::Vec;

use crate::math::abs;

/// Real symmetric matrix stored as its diagonal plus strictly-upper coordinate entries.
///
/// Each off-diagonal coupling is stored once; `entry(i, j) == entry(j, i)` holds by
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    diag: Vec<f64>,
    upper: Vec<(usize, usize, f64)>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymmetricMatrix {
            diag: vec![0.0; dim],
            upper: Vec::new(),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        SymmetricMatrix {
            diag: diag.to_vec(),
            upper: Vec::new(),
        }
    }

    /// Build from a row-major dense matrix, reading its upper triangle.
    pub fn from_dense(dim: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), dim * dim, "dense data must be dim*dim");
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.diag[i] = data[i * dim + i];
            for j in i + 1..dim {
                let v = data[i * dim + j];
                if v != 0.0 {
                    m.upper.push((i, j, v));
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn add_diagonal(&mut self, i: usize, v: f64) {
        self.diag[i] += v;
    }

    /// Record the coupling between `i` and `j` (`i != j`, order irrelevant).
    pub fn push_coupling(&mut self, i: usize, j: usize, v: f64) {
        assert!(i != j && i < self.dim() && j < self.dim(), "coupling index out of range");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.upper.push((a, b, v));
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    /// Stored off-diagonal entries `(i, j, v)` with `i < j`.
    pub fn couplings(&self) -> &[(usize, usize, f64)] {
        &self.upper
    }

    /// Linear search; intended for tests and small matrices.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.diag[i];
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.upper
            .iter()
            .filter(|&&(x, y, _)| x == a && y == b)
            .map(|&(_, _, v)| v)
            .sum()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            out[i * n + i] = self.diag[i];
        }
        for &(i, j, v) in &self.upper {
            out[i * n + j] += v;
            out[j * n + i] += v;
        }
        out
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (yi, (d, xi)) in y.iter_mut().zip(self.diag.iter().zip(x)) {
            *yi = d * xi;
        }
        for &(i, j, v) in &self.upper {
            y[i] += v * x[j];
            y[j] += v * x[i];
        }
    }

    /// Infinity-norm bound, max_i Σ_j |M_ij| ≥ ‖M‖₂.
    pub fn norm_bound(&self) -> f64 {
        let mut rows: Vec<f64> = self.diag.iter().map(|d| abs(*d)).collect();
        for &(i, j, v) in &self.upper {
            rows[i] += abs(v);
            rows[j] += abs(v);
        }
        rows.into_iter().fold(0.0, f64::max)
    }

    /// Compressed-row form of the full symmetric pattern, for repeated products.
    pub(crate) fn to_csr(&self) -> Csr {
        let n = self.dim();
        let mut counts = vec![1usize; n];
        for &(i, j, _) in &self.upper {
            counts[i] += 1;
            counts[j] += 1;
        }
        let mut row_ptr = vec![0usize; n + 1];
        for i in 0..n {
            row_ptr[i + 1] = row_ptr[i] + counts[i];
        }
        let mut fill = row_ptr.clone();
        let mut cols = vec![0usize; row_ptr[n]];
        let mut vals = vec![0.0; row_ptr[n]];
        for i in 0..n {
            cols[fill[i]] = i;
            vals[fill[i]] = self.diag[i];
            fill[i] += 1;
        }
        for &(i, j, v) in &self.upper {
            cols[fill[i]] = j;
            vals[fill[i]] = v;
            fill[i] += 1;
            cols[fill[j]] = i;
            vals[fill[j]] = v;
            fill[j] += 1;
        }
        Csr { row_ptr, cols, vals }
    }
}

pub(crate) struct Csr {
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Csr {
    pub(crate) fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let (s, t) = (self.row_ptr[i], self.row_ptr[i + 1]);
            *yi = self.cols[s..t]
                .iter()
                .zip(&self.vals[s..t])
                .map(|(&j, v)| v * x[j])
                .sum();
        }
    }
}
