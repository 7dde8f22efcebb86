use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;

/// Feature preprocessing applied before propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationMode {
    None,
    /// Divide each row by its L1 norm; all-zero rows are left alone.
    #[default]
    RowL1,
    /// Zero mean and unit population variance per column. Columns whose
    /// standard deviation is below `1e-12` become zero.
    Standardize,
}

pub fn normalize_features(x: &DenseMatrix, mode: NormalizationMode) -> DenseMatrix {
    let mut out = x.clone();
    let (n, d) = x.shape();
    match mode {
        NormalizationMode::None => {}
        NormalizationMode::RowL1 => {
            for i in 0..n {
                let row = out.row_mut(i);
                let norm: f64 = row.iter().map(|v| v.abs()).sum();
                if norm > 0.0 {
                    row.iter_mut().for_each(|v| *v /= norm);
                }
            }
        }
        NormalizationMode::Standardize => {
            if n == 0 {
                return out;
            }
            let mut mean = vec![0.0; d];
            for i in 0..n {
                for (m, v) in mean.iter_mut().zip(x.row(i)) {
                    *m += v;
                }
            }
            mean.iter_mut().for_each(|m| *m /= n as f64);
            let mut var = vec![0.0; d];
            for i in 0..n {
                for ((s, v), m) in var.iter_mut().zip(x.row(i)).zip(&mean) {
                    *s += (v - m) * (v - m);
                }
            }
            let scale: Vec<f64> = var
                .iter()
                .map(|s| {
                    let std = (s / n as f64).sqrt();
                    if std < 1e-12 {
                        0.0
                    } else {
                        1.0 / std
                    }
                })
                .collect();
            for i in 0..n {
                for ((v, m), s) in out.row_mut(i).iter_mut().zip(&mean).zip(&scale) {
                    *v = (*v - m) * s;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let x = DenseMatrix::from_rows(&[vec![2.0, 2.0]]).unwrap();
        assert_eq!(normalize_features(&x, NormalizationMode::RowL1).into_vec(), vec![0.5, 0.5]);
        let col = DenseMatrix::column_vector(&[1.0, 3.0]).unwrap();
        assert_eq!(normalize_features(&col, NormalizationMode::Standardize).into_vec(), vec![-1.0, 1.0]);
        let constant = DenseMatrix::column_vector(&[5.0, 5.0]).unwrap();
        assert_eq!(normalize_features(&constant, NormalizationMode::Standardize).into_vec(), vec![0.0, 0.0]);
        let zero = DenseMatrix::zeros(1, 3);
        assert_eq!(normalize_features(&zero, NormalizationMode::RowL1), zero);
    }
}
