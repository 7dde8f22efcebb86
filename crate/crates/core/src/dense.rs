use crate::error::{Error, Result};

/// Row-major dense matrix of `f64`.
///
/// Holds node features, propagated features and classifier weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n_rows: usize,
    n_cols: usize,
    values: Vec<f64>,
}

impl DenseMatrix {
    /// Wraps a row-major buffer. Every entry must be finite.
    pub fn new(n_rows: usize, n_cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n_rows * n_cols {
            return Err(Error::Shape(format!(
                "buffer of length {} cannot hold a {n_rows}x{n_cols} matrix",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Value(format!(
                "non-finite entry at ({}, {})",
                pos / n_cols.max(1),
                pos % n_cols.max(1)
            )));
        }
        Ok(Self { n_rows, n_cols, values })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, values: vec![0.0; n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.values[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != n_cols) {
            return Err(Error::Shape(format!(
                "row {bad} has length {}, expected {n_cols}",
                rows[bad].len()
            )));
        }
        Self::new(rows.len(), n_cols, rows.concat())
    }

    /// Column vector from a slice.
    pub fn column_vector(values: &[f64]) -> Result<Self> {
        Self::new(values.len(), 1, values.to_vec())
    }

    pub(crate) fn from_vec_unchecked(n_rows: usize, n_cols: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), n_rows * n_cols);
        Self { n_rows, n_cols, values }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.n_cols + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: f64) {
        self.values[row * self.n_cols + col] = value;
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.n_cols..(row + 1) * self.n_cols]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, row: usize) -> &mut [f64] {
        &mut self.values[row * self.n_cols..(row + 1) * self.n_cols]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.n_rows).map(|i| self.get(i, col)).collect()
    }

    /// Copies the listed rows, in order, into a new matrix.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(rows.len() * self.n_cols);
        for &r in rows {
            if r >= self.n_rows {
                return Err(Error::Index(format!("row {r} of a {}-row matrix", self.n_rows)));
            }
            values.extend_from_slice(self.row(r));
        }
        Ok(Self::from_vec_unchecked(rows.len(), self.n_cols, values))
    }

    /// Appends a constant-one column (bias feature).
    pub fn with_ones_column(&self) -> Self {
        let cols = self.n_cols + 1;
        let mut values = Vec::with_capacity(self.n_rows * cols);
        for i in 0..self.n_rows {
            values.extend_from_slice(self.row(i));
            values.push(1.0);
        }
        Self::from_vec_unchecked(self.n_rows, cols, values)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                out.values[j * self.n_rows + i] = self.values[i * self.n_cols + j];
            }
        }
        out
    }

    /// Dense product `self * rhs`, accumulated in `k` order per entry.
    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<Self> {
        if self.n_cols != rhs.n_rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n_rows, self.n_cols, rhs.n_rows, rhs.n_cols
            )));
        }
        let mut out = Self::zeros(self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            let out_row = &mut out.values[i * rhs.n_cols..(i + 1) * rhs.n_cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_vec_unchecked(
            self.n_rows,
            self.n_cols,
            self.values.iter().map(|v| v * factor).collect(),
        )
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// Largest absolute entry-wise difference; `None` if shapes differ.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Option<f64> {
        if self.shape() != other.shape() {
            return None;
        }
        Some(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}
