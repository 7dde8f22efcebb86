use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::ExperimentConfig;
use super::pipeline::{
    ablate_data_amount, ablate_propagation, ablation_csv, bench, data_amount_csv, run_experiment_with_model,
    sweep_weight_decay, BenchReport, RunResult,
};
use super::spectrum::{fourier_csv, spectrum_report, SpectrumArtifacts};
use crate::classifier::save_weights;
use crate::error::Result;

/// Writes `bytes` to a temporary file in the target directory, then renames
/// it over `path`, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn sweep_csv(table: &[RunResult]) -> String {
    let mut out = String::from("weight_decay,val_acc,test_acc,epochs_run,final_loss\n");
    for r in table {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.config.train.weight_decay, r.val_accuracy, r.test_accuracy, r.epochs_run, r.final_loss
        ));
    }
    out
}

/// `run`: writes `result.json` and `model.bin`.
pub fn run_to_dir(config: &ExperimentConfig, out: &Path) -> Result<RunResult> {
    let (result, params) = run_experiment_with_model(config)?;
    write_json(&out.join("result.json"), &result)?;
    save_weights(&out.join("model.bin"), &params.theta)?;
    Ok(result)
}

/// `sweep`: writes `sweep.csv` and, for the selected weight decay,
/// `result.json` and `model.bin`.
pub fn sweep_to_dir(config: &ExperimentConfig, out: &Path) -> Result<RunResult> {
    let (best, table) = sweep_weight_decay(config, &config.grid())?;
    write_atomic(&out.join("sweep.csv"), sweep_csv(&table).as_bytes())?;
    run_to_dir(&best.config, out)
}

/// `ablate-prop`: writes `ablation.csv`.
pub fn ablate_propagation_to_dir(config: &ExperimentConfig, out: &Path) -> Result<PathBuf> {
    let rows = ablate_propagation(config, &config.ablation.kinds, &config.ablation.k_values)?;
    let path = out.join("ablation.csv");
    write_atomic(&path, ablation_csv(&rows).as_bytes())?;
    Ok(path)
}

/// `ablate-data`: writes `data_amount.csv`.
pub fn ablate_data_to_dir(config: &ExperimentConfig, out: &Path) -> Result<PathBuf> {
    let rows = ablate_data_amount(config, &config.ablation.per_class, config.ablation.repeats)?;
    let path = out.join("data_amount.csv");
    write_atomic(&path, data_amount_csv(&rows).as_bytes())?;
    Ok(path)
}

/// `spectrum`: writes `spectrum.csv`, `spectrum.json`, one
/// `filter_curve_<kind>_K<k>.csv` per requested filter and `fourier.csv`
/// when the dense path is available.
pub fn spectrum_to_dir(config: &ExperimentConfig, out: &Path) -> Result<SpectrumArtifacts> {
    let art = spectrum_report(config)?;
    write_atomic(&out.join("spectrum.csv"), art.report.to_csv().as_bytes())?;
    write_json(&out.join("spectrum.json"), &art.report)?;
    for c in &art.curves {
        write_atomic(&out.join(format!("filter_curve_{}_K{}.csv", c.kind, c.k)), c.to_csv().as_bytes())?;
    }
    if let Some(points) = &art.fourier {
        write_atomic(&out.join("fourier.csv"), fourier_csv(points).as_bytes())?;
    }
    Ok(art)
}

/// `bench`: writes `bench.json`.
pub fn bench_to_dir(config: &ExperimentConfig, out: &Path) -> Result<BenchReport> {
    let report = bench(config, config.bench.warmup, config.bench.trials)?;
    write_json(&out.join("bench.json"), &report)?;
    Ok(report)
}
