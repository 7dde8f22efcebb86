//! Compressed sparse row matrices and the sparse-dense product kernel.

use rayon::prelude::*;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Real matrix in canonical CSR form.
///
/// Canonical means: `row_offsets` starts at 0 and is non-decreasing, column
/// indices are strictly increasing within each row, and no stored value is
/// exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

/// Builds a canonical CSR matrix from `(row, col, value)` triplets.
///
/// Entries sharing a position are summed; sums that come out exactly zero
/// are dropped. Duplicates are combined in a canonical order so the result
/// does not depend on the order of `triplets`.
pub fn csr_from_triplets(
    triplets: &[(usize, usize, f64)],
    n_rows: usize,
    n_cols: usize,
) -> Result<SparseMatrix> {
    for &(r, c, v) in triplets {
        if r >= n_rows || c >= n_cols {
            return Err(Error::Index(format!(
                "triplet ({r}, {c}) outside a {n_rows}x{n_cols} matrix"
            )));
        }
        if !v.is_finite() {
            return Err(Error::Value(format!("non-finite value at ({r}, {c})")));
        }
    }

    let mut sorted = triplets.to_vec();
    sorted.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then(a.2.total_cmp(&b.2)));

    let mut row_offsets = vec![0usize; n_rows + 1];
    let mut col_indices = Vec::with_capacity(sorted.len());
    let mut values = Vec::with_capacity(sorted.len());

    let mut i = 0;
    while i < sorted.len() {
        let (r, c, _) = sorted[i];
        let mut sum = 0.0;
        while i < sorted.len() && sorted[i].0 == r && sorted[i].1 == c {
            sum += sorted[i].2;
            i += 1;
        }
        if sum != 0.0 {
            col_indices.push(c);
            values.push(sum);
            row_offsets[r + 1] += 1;
        }
    }
    for r in 0..n_rows {
        row_offsets[r + 1] += row_offsets[r];
    }

    Ok(SparseMatrix { n_rows, n_cols, row_offsets, col_indices, values })
}

/// Sparse-dense product `s * x`.
///
/// Each output row is accumulated over the stored entries of the matching
/// row of `s` in column order, so the result is bitwise identical no matter
/// how many threads rayon uses.
pub fn spmm(s: &SparseMatrix, x: &DenseMatrix) -> Result<DenseMatrix> {
    if s.n_cols != x.n_rows() {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} sparse by {}x{} dense",
            s.n_rows,
            s.n_cols,
            x.n_rows(),
            x.n_cols()
        )));
    }
    let d = x.n_cols();
    let mut out = vec![0.0; s.n_rows * d];
    if d > 0 {
        out.par_chunks_mut(d).enumerate().for_each(|(i, out_row)| {
            let (cols, vals) = s.row(i);
            for (&j, &a) in cols.iter().zip(vals) {
                for (o, &b) in out_row.iter_mut().zip(x.row(j)) {
                    *o += a * b;
                }
            }
        });
    }
    Ok(DenseMatrix::from_vec_unchecked(s.n_rows, d, out))
}

impl SparseMatrix {
    /// Validates raw CSR arrays and wraps them.
    pub fn from_csr_parts(
        n_rows: usize,
        n_cols: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if row_offsets.len() != n_rows + 1 || row_offsets[0] != 0 {
            return Err(Error::Shape("row_offsets must have n_rows + 1 entries starting at 0".into()));
        }
        if row_offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Value("row_offsets must be non-decreasing".into()));
        }
        if row_offsets[n_rows] != col_indices.len() || col_indices.len() != values.len() {
            return Err(Error::Shape("row_offsets, col_indices and values disagree on nnz".into()));
        }
        for r in 0..n_rows {
            let cols = &col_indices[row_offsets[r]..row_offsets[r + 1]];
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Value(format!("row {r} columns not strictly increasing")));
            }
            if let Some(&c) = cols.iter().find(|&&c| c >= n_cols) {
                return Err(Error::Index(format!("column {c} in row {r} exceeds {n_cols}")));
            }
        }
        if values.iter().any(|v| !v.is_finite() || *v == 0.0) {
            return Err(Error::Value("stored values must be finite and non-zero".into()));
        }
        Ok(Self { n_rows, n_cols, row_offsets, col_indices, values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_rows: n,
            n_cols: n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values stored in `row`.
    #[inline]
    pub fn row(&self, row: usize) -> (&[usize], &[f64]) {
        let span = self.row_offsets[row]..self.row_offsets[row + 1];
        (&self.col_indices[span.clone()], &self.values[span])
    }

    /// Entry `(row, col)`, zero if not stored.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        let (cols, vals) = self.row(row);
        cols.binary_search(&col).map_or(0.0, |k| vals[k])
    }

    /// Iterates stored entries as `(row, col, value)`.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n_rows).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n_rows).map(|r| self.row(r).1.iter().sum()).collect()
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.n_rows)
            .map(|r| self.row(r).1.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest `|m[i][j] - m[j][i]|` together with its position.
    pub fn max_asymmetry(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for (r, c, v) in self.triplets() {
            let diff = (v - self.get(c, r)).abs();
            if diff > worst.0 {
                worst = (diff, r, c);
            }
        }
        worst
    }

    /// Fails with `Asymmetric` unless the matrix is square and symmetric to `tol`.
    pub fn check_symmetric(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "{}x{} matrix is not square",
                self.n_rows, self.n_cols
            )));
        }
        let (diff, row, col) = self.max_asymmetry();
        if diff > tol {
            return Err(Error::Asymmetric { row, col, diff });
        }
        Ok(())
    }

    /// `diag(left) * self * diag(right)`, dropping entries that become zero.
    pub fn scale_rows_cols(&self, left: &[f64], right: &[f64]) -> Result<Self> {
        if left.len() != self.n_rows || right.len() != self.n_cols {
            return Err(Error::Shape("diagonal scaling length mismatch".into()));
        }
        let triplets: Vec<_> = self
            .triplets()
            .map(|(r, c, v)| (r, c, left[r] * v * right[c]))
            .collect();
        csr_from_triplets(&triplets, self.n_rows, self.n_cols)
    }

    /// `diag_shift * I + scale * self` for square matrices.
    pub fn shifted(&self, diag_shift: f64, scale: f64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("shift requires a square matrix".into()));
        }
        let mut triplets: Vec<_> = self.triplets().map(|(r, c, v)| (r, c, scale * v)).collect();
        if diag_shift != 0.0 {
            triplets.extend((0..self.n_rows).map(|i| (i, i, diag_shift)));
        }
        csr_from_triplets(&triplets, self.n_rows, self.n_cols)
    }

    /// `y = self * x` for a single vector.
    pub fn spmv(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n_cols);
        debug_assert_eq!(y.len(), self.n_rows);
        for (r, out) in y.iter_mut().enumerate() {
            let (cols, vals) = self.row(r);
            *out = cols.iter().zip(vals).map(|(&c, &v)| v * x[c]).sum();
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.n_rows, self.n_cols);
        for (r, c, v) in self.triplets() {
            out.set(r, c, v);
        }
        out
    }
}
