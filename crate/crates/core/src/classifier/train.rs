use serde::{Deserialize, Serialize};

use super::objective::full_objective;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Optimizer {
    #[serde(rename = "gradient_descent", alias = "gd")]
    GradientDescent,
    /// Adam with moment decays 0.9 / 0.999, epsilon 1e-8 and bias correction.
    #[default]
    #[serde(rename = "adam")]
    AdaptiveMoment,
    /// L-BFGS with history 10 and a strong-Wolfe line search.
    #[serde(rename = "lbfgs")]
    QuasiNewton,
}

fn default_max_epochs() -> usize {
    100
}

fn default_learning_rate() -> f64 {
    0.2
}

fn default_convergence_tol() -> f64 {
    1e-9
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainOptions {
    #[serde(default = "default_max_epochs")]
    pub max_epochs: usize,
    #[serde(default = "default_learning_rate")]
    pub learning_rate: f64,
    #[serde(default)]
    pub weight_decay: f64,
    #[serde(default)]
    pub optimizer: Optimizer,
    /// Stop once `|f_prev - f| / max(|f_prev|, 1e-300)` falls below this.
    #[serde(default = "default_convergence_tol")]
    pub convergence_tol: f64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        Self {
            max_epochs: default_max_epochs(),
            learning_rate: default_learning_rate(),
            weight_decay: 0.0,
            optimizer: Optimizer::default(),
            convergence_tol: default_convergence_tol(),
        }
    }
}

impl TrainOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::Config(format!("learning_rate must be > 0, got {}", self.learning_rate)));
        }
        if self.max_epochs == 0 {
            return Err(Error::Config("max_epochs must be >= 1".into()));
        }
        if !(self.weight_decay.is_finite() && self.weight_decay >= 0.0) {
            return Err(Error::Config(format!("weight_decay must be >= 0, got {}", self.weight_decay)));
        }
        if self.convergence_tol.is_nan() || self.convergence_tol < 0.0 {
            return Err(Error::Config(format!("convergence_tol must be >= 0, got {}", self.convergence_tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub theta: DenseMatrix,
    pub weight_decay: f64,
    pub epochs_run: usize,
    pub final_loss: f64,
}

/// Trains the classifier on the rows in `train_mask`, starting from `Θ = 0`.
///
/// One epoch is one full-batch step (one L-BFGS iteration for
/// `QuasiNewton`). `loss_history` receives the loss at the initial point and
/// after each epoch when provided.
pub fn train(xbar: &DenseMatrix, y: &DenseMatrix, train_mask: &[usize], opts: &TrainOptions) -> Result<ModelParams> {
    train_with_history(xbar, y, train_mask, opts, None)
}

pub fn train_with_history(
    xbar: &DenseMatrix,
    y: &DenseMatrix,
    train_mask: &[usize],
    opts: &TrainOptions,
    loss_history: Option<&mut Vec<f64>>,
) -> Result<ModelParams> {
    opts.validate()?;
    if train_mask.is_empty() {
        return Err(Error::EmptyMask);
    }
    if y.n_rows() != xbar.n_rows() {
        return Err(Error::Shape(format!(
            "features have {} rows but targets have {}",
            xbar.n_rows(),
            y.n_rows()
        )));
    }
    let x = xbar.select_rows(train_mask)?;
    let y = y.select_rows(train_mask)?;
    let problem = Problem { x: &x, y: &y, weight_decay: opts.weight_decay };
    let mut history = loss_history;
    let mut record = |f: f64| {
        if let Some(h) = history.as_deref_mut() {
            h.push(f);
        }
    };

    let theta = DenseMatrix::zeros(x.n_cols(), y.n_cols());
    let (theta, epochs_run, final_loss) = match opts.optimizer {
        Optimizer::GradientDescent => first_order(&problem, theta, opts, &mut record, false)?,
        Optimizer::AdaptiveMoment => first_order(&problem, theta, opts, &mut record, true)?,
        Optimizer::QuasiNewton => lbfgs(&problem, theta, opts, &mut record)?,
    };
    Ok(ModelParams { theta, weight_decay: opts.weight_decay, epochs_run, final_loss })
}

struct Problem<'a> {
    x: &'a DenseMatrix,
    y: &'a DenseMatrix,
    weight_decay: f64,
}

impl Problem<'_> {
    fn eval(&self, theta: &DenseMatrix) -> (f64, DenseMatrix) {
        full_objective(theta, self.x, self.y, self.weight_decay)
    }
}

fn converged(prev: f64, cur: f64, tol: f64) -> bool {
    (prev - cur).abs() / prev.abs().max(1e-300) < tol
}

fn first_order(
    problem: &Problem,
    mut theta: DenseMatrix,
    opts: &TrainOptions,
    record: &mut dyn FnMut(f64),
    adam: bool,
) -> Result<(DenseMatrix, usize, f64)> {
    const BETA1: f64 = 0.9;
    const BETA2: f64 = 0.999;
    const EPS: f64 = 1e-8;
    let size = theta.as_slice().len();
    let mut m = vec![0.0; size];
    let mut v = vec![0.0; size];
    let lr = opts.learning_rate;

    let (mut loss, mut grad) = problem.eval(&theta);
    record(loss);
    let mut epochs = 0;
    while epochs < opts.max_epochs {
        epochs += 1;
        if adam {
            let c1 = 1.0 - BETA1.powi(epochs as i32);
            let c2 = 1.0 - BETA2.powi(epochs as i32);
            for (((t, &g), mi), vi) in theta.as_mut_slice().iter_mut().zip(grad.as_slice()).zip(&mut m).zip(&mut v) {
                *mi = BETA1 * *mi + (1.0 - BETA1) * g;
                *vi = BETA2 * *vi + (1.0 - BETA2) * g * g;
                *t -= lr * (*mi / c1) / ((*vi / c2).sqrt() + EPS);
            }
        } else {
            for (t, &g) in theta.as_mut_slice().iter_mut().zip(grad.as_slice()) {
                *t -= lr * g;
            }
        }
        let (next_loss, next_grad) = problem.eval(&theta);
        if !next_loss.is_finite() || !theta.all_finite() {
            return Err(Error::Divergence { epoch: epochs });
        }
        record(next_loss);
        let done = converged(loss, next_loss, opts.convergence_tol);
        loss = next_loss;
        grad = next_grad;
        if done {
            break;
        }
    }
    Ok((theta, epochs, loss))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(x: &[f64], step: f64, dir: &[f64]) -> Vec<f64> {
    x.iter().zip(dir).map(|(a, d)| a + step * d).collect()
}

const HISTORY: usize = 10;
const C1: f64 = 1e-4;
const C2: f64 = 0.9;

fn lbfgs(
    problem: &Problem,
    theta: DenseMatrix,
    opts: &TrainOptions,
    record: &mut dyn FnMut(f64),
) -> Result<(DenseMatrix, usize, f64)> {
    let (rows, cols) = theta.shape();
    let eval = |w: &[f64]| {
        let (f, g) = problem.eval(&DenseMatrix::from_vec_unchecked(rows, cols, w.to_vec()));
        (f, g.into_vec())
    };
    let mut w = theta.into_vec();
    let (mut f, mut g) = eval(&w);
    record(f);
    let mut s_hist: Vec<Vec<f64>> = Vec::with_capacity(HISTORY);
    let mut y_hist: Vec<Vec<f64>> = Vec::with_capacity(HISTORY);
    let mut epochs = 0;

    while epochs < opts.max_epochs {
        if g.iter().all(|&v| v == 0.0) {
            break;
        }
        epochs += 1;
        let dir = two_loop(&g, &s_hist, &y_hist);
        // First iteration: scale so the initial trial step moves at most lr.
        let init = if s_hist.is_empty() {
            let norm = dot(&g, &g).sqrt();
            (opts.learning_rate / norm).min(1.0)
        } else {
            1.0
        };
        let Some(step) = wolfe_search(&eval, &w, f, &g, &dir, init) else {
            // No acceptable step: the iterate is optimal to working precision.
            break;
        };
        let (alpha, f_new, g_new) = step;
        if !f_new.is_finite() {
            return Err(Error::Divergence { epoch: epochs });
        }
        let w_new = axpy(&w, alpha, &dir);
        let s: Vec<f64> = w_new.iter().zip(&w).map(|(a, b)| a - b).collect();
        let yv: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        if dot(&s, &yv) > 1e-12 * dot(&yv, &yv).sqrt() * dot(&s, &s).sqrt() {
            if s_hist.len() == HISTORY {
                s_hist.remove(0);
                y_hist.remove(0);
            }
            s_hist.push(s);
            y_hist.push(yv);
        }
        record(f_new);
        let done = converged(f, f_new, opts.convergence_tol);
        w = w_new;
        f = f_new;
        g = g_new;
        if done {
            break;
        }
    }
    Ok((DenseMatrix::from_vec_unchecked(rows, cols, w), epochs, f))
}

/// Returns `-H g` with `H` the L-BFGS inverse-Hessian approximation.
fn two_loop(g: &[f64], s_hist: &[Vec<f64>], y_hist: &[Vec<f64>]) -> Vec<f64> {
    let mut q = g.to_vec();
    let mut alphas = vec![0.0; s_hist.len()];
    for i in (0..s_hist.len()).rev() {
        let rho = 1.0 / dot(&y_hist[i], &s_hist[i]);
        alphas[i] = rho * dot(&s_hist[i], &q);
        for (qj, yj) in q.iter_mut().zip(&y_hist[i]) {
            *qj -= alphas[i] * yj;
        }
    }
    if let (Some(s), Some(y)) = (s_hist.last(), y_hist.last()) {
        let gamma = dot(s, y) / dot(y, y);
        q.iter_mut().for_each(|v| *v *= gamma);
    }
    for i in 0..s_hist.len() {
        let rho = 1.0 / dot(&y_hist[i], &s_hist[i]);
        let beta = rho * dot(&y_hist[i], &q);
        for (qj, sj) in q.iter_mut().zip(&s_hist[i]) {
            *qj += (alphas[i] - beta) * sj;
        }
    }
    q.iter_mut().for_each(|v| *v = -*v);
    q
}

type Eval<'a> = dyn Fn(&[f64]) -> (f64, Vec<f64>) + 'a;

/// Line search for a step satisfying the strong Wolfe conditions
/// (bracketing then zoom with safeguarded cubic interpolation).
fn wolfe_search(
    eval: &Eval,
    w: &[f64],
    f0: f64,
    g0: &[f64],
    dir: &[f64],
    init: f64,
) -> Option<(f64, f64, Vec<f64>)> {
    const MAX_STEPS: usize = 30;
    let d0 = dot(g0, dir);
    if d0.is_nan() || d0 >= 0.0 {
        return None;
    }
    let phi = |a: f64| {
        let (f, g) = eval(&axpy(w, a, dir));
        let d = dot(&g, dir);
        (f, g, d)
    };

    let (mut a_prev, mut f_prev, mut d_prev) = (0.0, f0, d0);
    let mut a = init;
    for i in 0..MAX_STEPS {
        let (f, g, d) = phi(a);
        if !f.is_finite() {
            // Overshot into overflow: shrink and retry.
            a = 0.5 * (a_prev + a);
            continue;
        }
        if f > f0 + C1 * a * d0 || (i > 0 && f >= f_prev) {
            return zoom(&phi, f0, d0, (a_prev, f_prev, d_prev), (a, f, d));
        }
        if d.abs() <= -C2 * d0 {
            return Some((a, f, g));
        }
        if d >= 0.0 {
            return zoom(&phi, f0, d0, (a, f, d), (a_prev, f_prev, d_prev));
        }
        a_prev = a;
        f_prev = f;
        d_prev = d;
        a *= 2.0;
    }
    None
}

fn cubic_min(a: (f64, f64, f64), b: (f64, f64, f64)) -> f64 {
    let (x1, f1, d1) = a;
    let (x2, f2, d2) = b;
    let d_1 = d1 + d2 - 3.0 * (f1 - f2) / (x1 - x2);
    let disc = d_1 * d_1 - d1 * d2;
    let (lo, hi) = (x1.min(x2), x1.max(x2));
    if disc >= 0.0 {
        let d_2 = (x2 - x1).signum() * disc.sqrt();
        let t = x2 - (x2 - x1) * ((d2 + d_2 - d_1) / (d2 - d1 + 2.0 * d_2));
        if t.is_finite() {
            // Keep the trial away from the bracket ends.
            let margin = 0.1 * (hi - lo);
            return t.clamp(lo + margin, hi - margin);
        }
    }
    0.5 * (lo + hi)
}

fn zoom(
    phi: &dyn Fn(f64) -> (f64, Vec<f64>, f64),
    f0: f64,
    d0: f64,
    mut lo: (f64, f64, f64),
    mut hi: (f64, f64, f64),
) -> Option<(f64, f64, Vec<f64>)> {
    const MAX_ZOOM: usize = 40;
    let mut best: Option<(f64, f64, Vec<f64>)> = None;
    for _ in 0..MAX_ZOOM {
        if (hi.0 - lo.0).abs() <= 1e-16 * lo.0.abs().max(1e-300) {
            break;
        }
        let a = cubic_min(lo, hi);
        let (f, g, d) = phi(a);
        if f > f0 + C1 * a * d0 || f >= lo.1 {
            hi = (a, f, d);
        } else {
            if d.abs() <= -C2 * d0 {
                return Some((a, f, g));
            }
            if best.as_ref().is_none_or(|b| f < b.1) {
                best = Some((a, f, g.clone()));
            }
            if d * (hi.0 - lo.0) >= 0.0 {
                hi = lo;
            }
            lo = (a, f, d);
        }
    }
    // Fall back to the best sufficient-decrease point found, if any.
    best.filter(|b| b.1 < f0)
}
