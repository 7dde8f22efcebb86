use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::classifier::{accuracy, micro_f1, one_hot, predict, train, ModelParams, TrainOptions};
use crate::data::{load_dataset, normalize_features, random_balanced_split, DatasetBundle};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::propagation::{build_propagation, PropagationKind, PropagationSpec};
use crate::sparse::spmm;

/// Outcome of one train-and-evaluate run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub config: ExperimentConfig,
    pub val_accuracy: f64,
    pub test_accuracy: f64,
    /// Micro-averaged F1 on the test nodes.
    pub micro_f1: f64,
    /// Normalization, operator construction and `S^K X`.
    pub precompute_seconds: f64,
    pub train_seconds: f64,
    pub epochs_run: usize,
    pub final_loss: f64,
}

impl RunResult {
    /// Copy with timing fields zeroed, for reproducibility comparisons.
    pub fn without_timings(&self) -> Self {
        Self { precompute_seconds: 0.0, train_seconds: 0.0, ..self.clone() }
    }
}

/// A loaded dataset with its propagated features.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub bundle: DatasetBundle,
    /// `S^K X` over all nodes, with the bias column if configured.
    pub features: DenseMatrix,
    pub targets: DenseMatrix,
    pub precompute_seconds: f64,
}

/// Normalizes, builds the operator and propagates `K` steps.
pub fn precompute(bundle: &DatasetBundle, config: &ExperimentConfig) -> Result<(DenseMatrix, f64)> {
    let start = Instant::now();
    let x = normalize_features(&bundle.features, config.normalization);
    let s = build_propagation(&bundle.graph, &config.propagation)?;
    let mut xbar = crate::propagation::propagate(&s, &x, config.propagation.k)?;
    if config.bias {
        xbar = xbar.with_ones_column();
    }
    Ok((xbar, start.elapsed().as_secs_f64()))
}

pub fn prepare(config: &ExperimentConfig) -> Result<Prepared> {
    config.validate()?;
    let bundle = load_dataset(&config.dataset_dir)?;
    prepare_bundle(bundle, config)
}

pub fn prepare_bundle(bundle: DatasetBundle, config: &ExperimentConfig) -> Result<Prepared> {
    let (features, precompute_seconds) = precompute(&bundle, config)?;
    let targets = one_hot(&bundle.labels, bundle.n_classes)?;
    Ok(Prepared { bundle, features, targets, precompute_seconds })
}

/// Borrowed inputs of a train-and-evaluate run.
#[derive(Debug, Clone, Copy)]
pub struct View<'a> {
    pub bundle: &'a DatasetBundle,
    pub features: &'a DenseMatrix,
    pub targets: &'a DenseMatrix,
    pub precompute_seconds: f64,
}

impl Prepared {
    pub fn view(&self) -> View<'_> {
        View {
            bundle: &self.bundle,
            features: &self.features,
            targets: &self.targets,
            precompute_seconds: self.precompute_seconds,
        }
    }
}

/// Trains on `train_mask` and scores the validation and test masks.
pub fn fit_and_evaluate(view: View<'_>, config: &ExperimentConfig, train_mask: &[usize]) -> Result<(RunResult, ModelParams)> {
    let start = Instant::now();
    let params = train(view.features, view.targets, train_mask, &config.train)?;
    let train_seconds = start.elapsed().as_secs_f64();

    let b = view.bundle;
    let pred = predict(&params.theta, view.features)?;
    let result = RunResult {
        config: config.clone(),
        val_accuracy: accuracy(&pred, &b.labels, &b.val_mask)?,
        test_accuracy: accuracy(&pred, &b.labels, &b.test_mask)?,
        micro_f1: micro_f1(&pred, &b.labels, &b.test_mask)?,
        precompute_seconds: view.precompute_seconds,
        train_seconds,
        epochs_run: params.epochs_run,
        final_loss: params.final_loss,
    };
    Ok((result, params))
}

/// Full pipeline: load, normalize, propagate, train, evaluate.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunResult> {
    Ok(run_experiment_with_model(config)?.0)
}

pub fn run_experiment_with_model(config: &ExperimentConfig) -> Result<(RunResult, ModelParams)> {
    let prepared = prepare(config)?;
    fit_and_evaluate(prepared.view(), config, &prepared.bundle.train_mask)
}

/// Index of the best validation accuracy; ties go to the smaller weight decay.
fn select_best(results: &[RunResult]) -> usize {
    let mut best = 0;
    for (i, r) in results.iter().enumerate().skip(1) {
        let b = &results[best];
        let better = r.val_accuracy > b.val_accuracy
            || (r.val_accuracy == b.val_accuracy && r.config.train.weight_decay < b.config.train.weight_decay);
        if better {
            best = i;
        }
    }
    best
}

/// Trains one model per grid value on a shared precomputation.
///
/// Returns the best run by validation accuracy and the table in grid order.
pub fn sweep_weight_decay(config: &ExperimentConfig, grid: &[f64]) -> Result<(RunResult, Vec<RunResult>)> {
    let prepared = prepare(config)?;
    sweep_prepared(prepared.view(), config, grid, &prepared.bundle.train_mask)
}

pub fn sweep_prepared(
    view: View<'_>,
    config: &ExperimentConfig,
    grid: &[f64],
    train_mask: &[usize],
) -> Result<(RunResult, Vec<RunResult>)> {
    if grid.is_empty() {
        return Err(Error::Config("weight-decay grid is empty".into()));
    }
    if let Some(v) = grid.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::Config(format!("weight decay {v} must be finite and >= 0")));
    }
    let table = grid
        .par_iter()
        .map(|&wd| fit_and_evaluate(view, &config.with_weight_decay(wd), train_mask).map(|(r, _)| r))
        .collect::<Result<Vec<_>>>()?;
    let best = table[select_best(&table)].clone();
    Ok((best, table))
}

/// One `(kind, K)` cell of the propagation ablation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationRow {
    pub kind: PropagationKind,
    #[serde(rename = "K")]
    pub k: usize,
    /// Tuned weight decay and its validation accuracy, or the failure.
    pub outcome: std::result::Result<(f64, f64), String>,
}

fn csv_safe(msg: &str) -> String {
    msg.replace([',', '\n', '\r'], ";")
}

pub fn ablation_csv(rows: &[AblationRow]) -> String {
    let mut out = String::from("kind,K,weight_decay,val_acc\n");
    for r in rows {
        match &r.outcome {
            Ok((wd, acc)) => out.push_str(&format!("{},{},{wd},{acc}\n", r.kind, r.k)),
            Err(msg) => out.push_str(&format!("{},{},,error: {}\n", r.kind, r.k, csv_safe(msg))),
        }
    }
    out
}

/// Validation accuracy for every `(kind, K)` with weight decay tuned on the
/// configured grid. Powers are built incrementally per kind.
pub fn ablate_propagation(config: &ExperimentConfig, kinds: &[PropagationKind], k_values: &[usize]) -> Result<Vec<AblationRow>> {
    config.validate()?;
    let bundle = load_dataset(&config.dataset_dir)?;
    ablate_propagation_bundle(&bundle, config, kinds, k_values)
}

pub fn ablate_propagation_bundle(
    bundle: &DatasetBundle,
    config: &ExperimentConfig,
    kinds: &[PropagationKind],
    k_values: &[usize],
) -> Result<Vec<AblationRow>> {
    let grid = config.grid();
    let x = normalize_features(&bundle.features, config.normalization);
    let targets = one_hot(&bundle.labels, bundle.n_classes)?;
    let mut ks: Vec<usize> = k_values.to_vec();
    ks.sort_unstable();
    ks.dedup();

    let mut rows = Vec::new();
    for &kind in kinds {
        let spec = PropagationSpec { kind, gamma: config.propagation.gamma, k: 0 };
        let s = match build_propagation(&bundle.graph, &spec) {
            Ok(s) => s,
            Err(e) => {
                rows.extend(ks.iter().map(|&k| AblationRow { kind, k, outcome: Err(e.to_string()) }));
                continue;
            }
        };
        // Propagated features for every requested K, one spmm per power.
        let mut powers = Vec::with_capacity(ks.len());
        let mut current = x.clone();
        let mut at = 0;
        for &k in &ks {
            while at < k {
                current = spmm(&s, &current)?;
                at += 1;
            }
            powers.push((k, current.clone()));
        }
        let cells: Vec<AblationRow> = powers
            .into_par_iter()
            .map(|(k, xbar)| {
                let features = if config.bias { xbar.with_ones_column() } else { xbar };
                let view = View { bundle, features: &features, targets: &targets, precompute_seconds: 0.0 };
                let mut cfg = config.clone();
                cfg.propagation = PropagationSpec { kind, gamma: config.propagation.gamma, k };
                let outcome = sweep_prepared(view, &cfg, &grid, &bundle.train_mask)
                    .map(|(best, _)| (best.config.train.weight_decay, best.val_accuracy))
                    .map_err(|e| e.to_string());
                AblationRow { kind, k, outcome }
            })
            .collect();
        rows.extend(cells);
    }
    Ok(rows)
}

/// Mean validation accuracy over repeated random balanced splits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataAmountRow {
    pub per_class: usize,
    pub repeats: usize,
    pub mean_val_acc: f64,
    pub std_val_acc: f64,
}

pub fn data_amount_csv(rows: &[DataAmountRow]) -> String {
    let mut out = String::from("per_class,repeats,mean_val_acc,std_val_acc\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.per_class, r.repeats, r.mean_val_acc, r.std_val_acc));
    }
    out
}

/// For each `per_class`, trains on balanced splits drawn with seeds
/// `seed..seed + n_repeats` from nodes outside the validation and test masks.
///
/// With a `sweep` grid in the config the weight decay is tuned per split on
/// validation accuracy; otherwise `train.weight_decay` is used.
pub fn ablate_data_amount(config: &ExperimentConfig, per_class_list: &[usize], n_repeats: usize) -> Result<Vec<DataAmountRow>> {
    let prepared = prepare(config)?;
    ablate_data_amount_prepared(prepared.view(), config, per_class_list, n_repeats)
}

pub fn ablate_data_amount_prepared(
    view: View<'_>,
    config: &ExperimentConfig,
    per_class_list: &[usize],
    n_repeats: usize,
) -> Result<Vec<DataAmountRow>> {
    if n_repeats == 0 {
        return Err(Error::Config("n_repeats must be >= 1".into()));
    }
    let b = view.bundle;
    let excluded: Vec<usize> = b.val_mask.iter().chain(&b.test_mask).copied().collect();
    let mut rows = Vec::with_capacity(per_class_list.len());
    for &per_class in per_class_list {
        let accs = (0..n_repeats as u64)
            .into_par_iter()
            .map(|r| {
                let split = random_balanced_split(&b.labels, per_class, config.seed.wrapping_add(r), &excluded)?;
                let run = match &config.sweep {
                    Some(grid) => sweep_prepared(view, config, grid, &split)?.0,
                    None => fit_and_evaluate(view, config, &split)?.0,
                };
                Ok(run.val_accuracy)
            })
            .collect::<Result<Vec<f64>>>()?;
        let mean = accs.iter().sum::<f64>() / accs.len() as f64;
        let var = accs.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / accs.len() as f64;
        rows.push(DataAmountRow { per_class, repeats: n_repeats, mean_val_acc: mean, std_val_acc: var.sqrt() });
    }
    Ok(rows)
}

/// Median wall-clock timings; `total` is precompute plus training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub warmup: usize,
    pub trials: usize,
    pub precompute_seconds: f64,
    pub train_seconds: f64,
    pub total_seconds: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Times precomputation and training over `n_trials` runs after `n_warmup`
/// discarded ones. Dataset loading is not timed.
pub fn bench(config: &ExperimentConfig, n_warmup: usize, n_trials: usize) -> Result<BenchReport> {
    config.validate()?;
    let bundle = load_dataset(&config.dataset_dir)?;
    bench_bundle(&bundle, config, n_warmup, n_trials)
}

pub fn bench_bundle(bundle: &DatasetBundle, config: &ExperimentConfig, n_warmup: usize, n_trials: usize) -> Result<BenchReport> {
    if n_trials == 0 {
        return Err(Error::Config("n_trials must be >= 1".into()));
    }
    let targets = one_hot(&bundle.labels, bundle.n_classes)?;
    let mut pre = Vec::with_capacity(n_trials);
    let mut fit = Vec::with_capacity(n_trials);
    for trial in 0..n_warmup + n_trials {
        let (xbar, p) = precompute(bundle, config)?;
        let start = Instant::now();
        train(&xbar, &targets, &bundle.train_mask, &config.train)?;
        let t = start.elapsed().as_secs_f64();
        if trial >= n_warmup {
            pre.push(p);
            fit.push(t);
        }
    }
    let totals: Vec<f64> = pre.iter().zip(&fit).map(|(a, b)| a + b).collect();
    Ok(BenchReport {
        warmup: n_warmup,
        trials: n_trials,
        precompute_seconds: median(pre),
        train_seconds: median(fit),
        total_seconds: median(totals),
    })
}

/// Training options used by `bench` when comparing epoch budgets.
pub fn with_epochs(opts: &TrainOptions, max_epochs: usize) -> TrainOptions {
    TrainOptions { max_epochs, convergence_tol: 0.0, ..*opts }
}
