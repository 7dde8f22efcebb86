//! Config-driven runs: single experiments, weight-decay sweeps, ablations
//! over propagation operators and training-set size, spectrum reports and
//! timing benchmarks.
//!
//! Each `*_to_dir` function backs one CLI verb and writes its files
//! atomically into the output directory.

mod config;
mod output;
mod pipeline;
mod spectrum;

pub use config::{
    default_weight_decay_grid, log_grid, AblationOptions, BenchOptions, ExperimentConfig, SpectrumOptions,
};
pub use output::{
    ablate_data_to_dir, ablate_propagation_to_dir, bench_to_dir, run_to_dir, spectrum_to_dir, sweep_csv,
    sweep_to_dir, write_atomic,
};
pub use pipeline::{
    ablate_data_amount, ablate_data_amount_prepared, ablate_propagation, ablate_propagation_bundle, ablation_csv,
    bench, bench_bundle, data_amount_csv, fit_and_evaluate, precompute, prepare, prepare_bundle, run_experiment,
    run_experiment_with_model, sweep_prepared, sweep_weight_decay, with_epochs, AblationRow, BenchReport,
    DataAmountRow, Prepared, RunResult, View,
};
pub use spectrum::{
    fourier_csv, lambda_samples, spectrum_report, spectrum_report_bundle, SpectrumArtifacts,
};
