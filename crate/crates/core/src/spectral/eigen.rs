//! Symmetric eigensolvers: a dense path for moderate sizes and a Lanczos
//! path for the extreme eigenvalues of large sparse matrices.

use faer::{Mat, Side};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// Largest dimension handled by the dense eigensolver.
pub const DEFAULT_DENSE_CAP: usize = 4096;

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// Matrices up to this size use the dense solver.
    pub dense_cap: usize,
    /// Krylov subspace dimension per Lanczos cycle (capped at `n`).
    pub krylov_dim: usize,
    /// Total Lanczos steps allowed across restarts.
    pub max_iterations: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self { dense_cap: DEFAULT_DENSE_CAP, krylov_dim: 200, max_iterations: 500 }
    }
}

fn to_faer(m: &SparseMatrix) -> Mat<f64> {
    let mut out = Mat::<f64>::zeros(m.n_rows(), m.n_cols());
    for (r, c, v) in m.triplets() {
        out[(r, c)] = v;
    }
    out
}

fn check_dense_input(m: &SparseMatrix, cap: usize) -> Result<()> {
    m.check_symmetric(SYMMETRY_TOL)?;
    if m.n_rows() > cap {
        return Err(Error::Size { n: m.n_rows(), cap });
    }
    Ok(())
}

/// Full eigendecomposition `M = U diag(λ) Uᵀ` with eigenvalues ascending.
///
/// Column `j` of the returned matrix is the eigenvector for eigenvalue `j`.
pub fn dense_eigendecomposition(m: &SparseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    dense_eigendecomposition_capped(m, DEFAULT_DENSE_CAP)
}

pub fn dense_eigendecomposition_capped(m: &SparseMatrix, cap: usize) -> Result<(Vec<f64>, DenseMatrix)> {
    check_dense_input(m, cap)?;
    let n = m.n_rows();
    let evd = to_faer(m)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::Convergence { iterations: 0, best_residual: f64::NAN })?;
    let s = evd.S();
    let u = evd.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| s[a].total_cmp(&s[b]));
    let values = order.iter().map(|&j| s[j]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (new_j, &j) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_j, u[(i, j)]);
        }
    }
    Ok((values, vectors))
}

/// Eigenvalues only, ascending.
pub fn dense_eigenvalues(m: &SparseMatrix, cap: usize) -> Result<Vec<f64>> {
    check_dense_input(m, cap)?;
    let mut values = to_faer(m)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::Convergence { iterations: 0, best_residual: f64::NAN })?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Smallest and largest eigenvalue of a symmetric matrix.
///
/// Uses the dense solver up to `dense_cap`, otherwise Lanczos on `M` for the
/// top of the spectrum and on `σI - M` for the bottom, with `σ` the
/// Gershgorin upper bound. Lanczos results satisfy
/// `‖Mv - λv‖ ≤ tol · ‖M‖_∞`.
pub fn extreme_eigenvalues(m: &SparseMatrix, tol: f64) -> Result<(f64, f64)> {
    extreme_eigenvalues_with(m, tol, &EigenOptions::default())
}

pub fn extreme_eigenvalues_with(m: &SparseMatrix, tol: f64, opts: &EigenOptions) -> Result<(f64, f64)> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Value(format!("tolerance must be positive, got {tol}")));
    }
    m.check_symmetric(SYMMETRY_TOL)?;
    if m.n_rows() == 0 {
        return Err(Error::Shape("empty matrix has no eigenvalues".into()));
    }
    if m.n_rows() <= opts.dense_cap {
        let values = dense_eigenvalues(m, opts.dense_cap)?;
        return Ok((values[0], values[values.len() - 1]));
    }
    let (lo, hi) = lanczos_extremes(m, tol, opts)?;
    Ok((lo.value, hi.value))
}

/// A converged Ritz pair summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RitzValue {
    pub value: f64,
    /// `‖Mv - λv‖` for the unit Ritz vector `v`.
    pub residual: f64,
    /// Lanczos steps spent, including restarts.
    pub iterations: usize,
}

/// Extreme eigenvalues by Lanczos regardless of size.
pub fn lanczos_extremes(m: &SparseMatrix, tol: f64, opts: &EigenOptions) -> Result<(RitzValue, RitzValue)> {
    m.check_symmetric(SYMMETRY_TOL)?;
    let n = m.n_rows();
    let norm = m.inf_norm().max(f64::MIN_POSITIVE);
    let abs_tol = tol * norm;

    let top = lanczos_largest(n, |x, y| m.spmv(x, y), abs_tol, opts)?;

    let sigma = gershgorin_upper(m);
    let mut scratch = vec![0.0; n];
    let shifted = lanczos_largest(
        n,
        |x, y| {
            m.spmv(x, &mut scratch);
            for ((yi, &xi), &mi) in y.iter_mut().zip(x).zip(scratch.iter()) {
                *yi = sigma * xi - mi;
            }
        },
        abs_tol,
        opts,
    )?;
    let bottom = RitzValue { value: sigma - shifted.value, ..shifted };
    Ok((bottom, top))
}

/// `max_i (m_ii + Σ_{j≠i} |m_ij|)`.
pub fn gershgorin_upper(m: &SparseMatrix) -> f64 {
    (0..m.n_rows())
        .map(|i| {
            let (cols, vals) = m.row(i);
            cols.iter()
                .zip(vals)
                .map(|(&j, &v)| if j == i { v } else { v.abs() })
                .sum::<f64>()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Restarted Lanczos with full reorthogonalization for the largest
/// eigenvalue of the operator `apply` (`y = A x`).
///
/// Each cycle builds a Krylov basis from the current start vector, takes the
/// largest Ritz pair and checks the true residual; an unconverged Ritz
/// vector seeds the next cycle. The first start vector is the normalized
/// all-ones vector with entry 0 raised by one, so runs are reproducible.
fn lanczos_largest<F>(n: usize, mut apply: F, abs_tol: f64, opts: &EigenOptions) -> Result<RitzValue>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let m = opts.krylov_dim.min(n).max(1);
    let mut start = vec![1.0; n];
    start[0] += 1.0;
    normalize(&mut start);

    let mut spent = 0;
    let mut best = f64::INFINITY;
    let mut w = vec![0.0; n];

    while spent < opts.max_iterations {
        let steps = m.min(opts.max_iterations - spent).max(1);
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(steps);
        let mut alpha = Vec::with_capacity(steps);
        let mut beta: Vec<f64> = Vec::with_capacity(steps);
        basis.push(start.clone());

        for j in 0..steps {
            apply(&basis[j], &mut w);
            spent += 1;
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            // Two passes of Gram-Schmidt against the whole basis.
            for _ in 0..2 {
                for q in &basis {
                    let proj = dot(&w, q);
                    w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= proj * qi);
                }
            }
            if j + 1 == steps {
                break;
            }
            let b = normalize(&mut w);
            if b <= 1e-14 * (a.abs() + 1.0) {
                break;
            }
            beta.push(b);
            basis.push(w.clone());
        }

        let k = alpha.len();
        let mut tri = Mat::<f64>::zeros(k, k);
        for i in 0..k {
            tri[(i, i)] = alpha[i];
            if i + 1 < k {
                tri[(i, i + 1)] = beta[i];
                tri[(i + 1, i)] = beta[i];
            }
        }
        let evd = tri
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| Error::Convergence { iterations: spent, best_residual: best })?;
        let s = evd.S();
        let u = evd.U();
        let top = (0..k).max_by(|&a, &b| s[a].total_cmp(&s[b])).unwrap_or(0);
        let theta = s[top];

        let mut ritz = vec![0.0; n];
        for (i, q) in basis.iter().take(k).enumerate() {
            let coef = u[(i, top)];
            ritz.iter_mut().zip(q).for_each(|(r, qi)| *r += coef * qi);
        }
        normalize(&mut ritz);
        apply(&ritz, &mut w);
        let residual = w.iter().zip(&ritz).map(|(a, r)| (a - theta * r).powi(2)).sum::<f64>().sqrt();
        best = best.min(residual);
        if residual <= abs_tol {
            return Ok(RitzValue { value: theta, residual, iterations: spent });
        }
        start = ritz;
    }
    Err(Error::Convergence { iterations: spent, best_residual: best })
}
