use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Numerically stable softmax (max-subtracted).
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let mut out = logits.to_vec();
    softmax_in_place(&mut out);
    out
}

pub(crate) fn softmax_in_place(v: &mut [f64]) {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for x in v.iter_mut() {
        *x = (*x - max).exp();
        sum += *x;
    }
    for x in v.iter_mut() {
        *x /= sum;
    }
}

/// `max + ln Σ exp(v - max)`.
pub(crate) fn log_sum_exp(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    max + v.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// One-hot encoding; rows for unlabeled nodes (`-1`) are all zero.
pub fn one_hot(labels: &[i64], n_classes: usize) -> Result<DenseMatrix> {
    let mut out = DenseMatrix::zeros(labels.len(), n_classes);
    for (i, &y) in labels.iter().enumerate() {
        if y < 0 {
            continue;
        }
        if y as usize >= n_classes {
            return Err(Error::Index(format!("label {y} of node {i} with {n_classes} classes")));
        }
        out.set(i, y as usize, 1.0);
    }
    Ok(out)
}

fn check_shapes(theta: &DenseMatrix, xbar: &DenseMatrix, y: &DenseMatrix) -> Result<()> {
    if xbar.n_cols() != theta.n_rows() {
        return Err(Error::Shape(format!(
            "features have {} columns but weights have {} rows",
            xbar.n_cols(),
            theta.n_rows()
        )));
    }
    if y.shape() != (xbar.n_rows(), theta.n_cols()) {
        return Err(Error::Shape(format!(
            "targets are {}x{}, expected {}x{}",
            y.n_rows(),
            y.n_cols(),
            xbar.n_rows(),
            theta.n_cols()
        )));
    }
    Ok(())
}

/// Mean cross-entropy over `mask` plus `(weight_decay / 2) ‖Θ‖²`, and its
/// gradient `(1/|mask|) X̄ᵀ(P - Y) + weight_decay · Θ` restricted to `mask`.
pub fn loss_and_gradient(
    theta: &DenseMatrix,
    xbar: &DenseMatrix,
    y: &DenseMatrix,
    mask: &[usize],
    weight_decay: f64,
) -> Result<(f64, DenseMatrix)> {
    if mask.is_empty() {
        return Err(Error::EmptyMask);
    }
    check_shapes(theta, xbar, y)?;
    if let Some(&bad) = mask.iter().find(|&&i| i >= xbar.n_rows()) {
        return Err(Error::Index(format!("mask node {bad} of {} rows", xbar.n_rows())));
    }
    Ok(masked_objective(theta, xbar, y, mask.iter().copied(), mask.len(), weight_decay))
}

/// Same objective over every row; used by training on pre-selected rows.
pub(crate) fn full_objective(theta: &DenseMatrix, x: &DenseMatrix, y: &DenseMatrix, weight_decay: f64) -> (f64, DenseMatrix) {
    masked_objective(theta, x, y, 0..x.n_rows(), x.n_rows(), weight_decay)
}

fn masked_objective(
    theta: &DenseMatrix,
    xbar: &DenseMatrix,
    y: &DenseMatrix,
    rows: impl Iterator<Item = usize>,
    count: usize,
    weight_decay: f64,
) -> (f64, DenseMatrix) {
    let (d, c) = theta.shape();
    let mut grad = DenseMatrix::zeros(d, c);
    let mut logits = vec![0.0; c];
    let mut loss = 0.0;
    for i in rows {
        let x = xbar.row(i);
        logits.iter_mut().for_each(|l| *l = 0.0);
        for (k, &xk) in x.iter().enumerate() {
            if xk == 0.0 {
                continue;
            }
            for (l, &t) in logits.iter_mut().zip(theta.row(k)) {
                *l += xk * t;
            }
        }
        let lse = log_sum_exp(&logits);
        let target = y.row(i);
        let mass: f64 = target.iter().sum();
        loss += lse * mass - target.iter().zip(&logits).map(|(t, l)| t * l).sum::<f64>();

        // Reuse `logits` as the residual P - Y.
        for (l, &t) in logits.iter_mut().zip(target) {
            *l = (*l - lse).exp() * mass - t;
        }
        for (k, &xk) in x.iter().enumerate() {
            if xk == 0.0 {
                continue;
            }
            for (g, &r) in grad.row_mut(k).iter_mut().zip(&logits) {
                *g += xk * r;
            }
        }
    }
    let inv = 1.0 / count as f64;
    let mut total = loss * inv;
    for (g, &t) in grad.as_mut_slice().iter_mut().zip(theta.as_slice()) {
        *g = *g * inv + weight_decay * t;
    }
    if weight_decay != 0.0 {
        total += 0.5 * weight_decay * theta.frobenius_norm_sq();
    }
    (total, grad)
}
