use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Row-wise argmax of `X̄Θ`, ties going to the lowest class index.
pub fn predict(theta: &DenseMatrix, xbar: &DenseMatrix) -> Result<Vec<usize>> {
    let logits = xbar.matmul(theta)?;
    Ok((0..logits.n_rows()).map(|i| argmax(logits.row(i))).collect())
}

pub(crate) fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (j, &x) in v.iter().enumerate().skip(1) {
        if x > v[best] {
            best = j;
        }
    }
    best
}

fn check(pred: &[usize], truth: &[i64], mask: &[usize]) -> Result<()> {
    if pred.len() != truth.len() {
        return Err(Error::Shape(format!("{} predictions for {} labels", pred.len(), truth.len())));
    }
    if mask.is_empty() {
        return Err(Error::EmptyMask);
    }
    if let Some(&bad) = mask.iter().find(|&&i| i >= pred.len()) {
        return Err(Error::Index(format!("mask node {bad} of {}", pred.len())));
    }
    Ok(())
}

fn correct(pred: &[usize], truth: &[i64], mask: &[usize]) -> usize {
    mask.iter().filter(|&&i| truth[i] >= 0 && pred[i] == truth[i] as usize).count()
}

/// Fraction of masked nodes predicted correctly.
pub fn accuracy(pred: &[usize], truth: &[i64], mask: &[usize]) -> Result<f64> {
    check(pred, truth, mask)?;
    Ok(correct(pred, truth, mask) as f64 / mask.len() as f64)
}

/// F1 with true/false positive and false negative counts pooled over classes.
pub fn micro_f1(pred: &[usize], truth: &[i64], mask: &[usize]) -> Result<f64> {
    check(pred, truth, mask)?;
    let tp = correct(pred, truth, mask);
    // Each wrong prediction is one false positive (predicted class) and one
    // false negative (true class).
    let wrong = mask.len() - tp;
    let (fp, fn_) = (wrong, wrong);
    Ok((2 * tp) as f64 / (2 * tp + fp + fn_) as f64)
}
