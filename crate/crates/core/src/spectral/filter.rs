use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::propagation::PropagationKind;

/// Spectral response of `S^K` sampled at Laplacian eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterCurve {
    pub kind: PropagationKind,
    #[serde(rename = "K")]
    pub k: usize,
    /// `(λ, ĝ(λ))` pairs in input order.
    pub points: Vec<(f64, f64)>,
}

impl FilterCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,g_hat\n");
        for (l, g) in &self.points {
            out.push_str(&format!("{l},{g}\n"));
        }
        out
    }
}

/// Closed-form filter coefficient of `kind` raised to power `k` at `lambda`.
///
/// Adjacency-type operators act as `(1 - λ)^K` on the spectrum of their
/// matching Laplacian; the first-order Chebyshev operator `2I - Δ_sym`
/// acts as `(2 - λ)^K`.
pub fn filter_coefficient(kind: PropagationKind, k: usize, lambda: f64) -> f64 {
    let base = match kind {
        PropagationKind::FirstOrderCheby => 2.0 - lambda,
        _ => 1.0 - lambda,
    };
    base.powi(k as i32)
}

pub fn filter_response(kind: PropagationKind, k: usize, lambdas: &[f64]) -> FilterCurve {
    FilterCurve {
        kind,
        k,
        points: lambdas.iter().map(|&l| (l, filter_coefficient(kind, k, l))).collect(),
    }
}

/// Graph Fourier transform `x̂ = Uᵀ x`.
pub fn spectral_coefficients(u: &DenseMatrix, x: &[f64]) -> Result<Vec<f64>> {
    if u.n_rows() != x.len() {
        return Err(Error::Shape(format!(
            "basis has {} rows but signal has length {}",
            u.n_rows(),
            x.len()
        )));
    }
    let mut out = vec![0.0; u.n_cols()];
    for (i, &xi) in x.iter().enumerate() {
        for (o, &uij) in out.iter_mut().zip(u.row(i)) {
            *o += uij * xi;
        }
    }
    Ok(out)
}
