use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classifier::TrainOptions;
use crate::data::NormalizationMode;
use crate::error::{Error, Result};
use crate::propagation::{PropagationKind, PropagationSpec};

/// Settings for `ablate-prop` and `ablate-data`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AblationOptions {
    pub kinds: Vec<PropagationKind>,
    #[serde(rename = "K_values", alias = "k_values")]
    pub k_values: Vec<usize>,
    pub per_class: Vec<usize>,
    pub repeats: usize,
}

impl Default for AblationOptions {
    fn default() -> Self {
        Self {
            kinds: PropagationKind::ALL.to_vec(),
            k_values: (1..=10).collect(),
            per_class: vec![1, 5, 10, 20, 40, 80],
            repeats: 10,
        }
    }
}

/// Settings for the `spectrum` verb.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectrumOptions {
    /// Filter curves to write, one file per `(kind, K)` pair.
    pub filters: Vec<PropagationSpec>,
    /// Number of evenly spaced `λ` samples on `[0, 2]` per curve.
    pub curve_points: usize,
    /// Feature column whose graph Fourier coefficients go to `fourier.csv`.
    pub fourier_feature: usize,
    pub tolerance: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            filters: vec![
                PropagationSpec::new(PropagationKind::AugNormalizedAdjacency, 2),
                PropagationSpec::new(PropagationKind::FirstOrderCheby, 2),
            ],
            curve_points: 201,
            fourier_feature: 3,
            tolerance: crate::spectral::DEFAULT_THEOREM_TOL,
        }
    }
}

/// Settings for the `bench` verb.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BenchOptions {
    pub warmup: usize,
    pub trials: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self { warmup: 1, trials: 5 }
    }
}

/// One experiment, as read from a JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset_dir: PathBuf,
    pub propagation: PropagationSpec,
    #[serde(default)]
    pub normalization: NormalizationMode,
    #[serde(default)]
    pub train: TrainOptions,
    /// Weight-decay grid for `sweep` and for tuning inside ablations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<f64>>,
    /// Base seed of random balanced splits.
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Append a constant-1 column to the propagated features.
    #[serde(default)]
    pub bias: bool,
    #[serde(default)]
    pub ablation: AblationOptions,
    #[serde(default)]
    pub spectrum: SpectrumOptions,
    #[serde(default)]
    pub bench: BenchOptions,
}

/// The default tuning grid: 20 log-spaced values from `1e-7` to `1e-2`.
pub fn default_weight_decay_grid() -> Vec<f64> {
    log_grid(1e-7, 1e-2, 20)
}

/// `points` values evenly spaced in log10 between `lo` and `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..points)
                .map(|i| 10f64.powf(a + (b - a) * i as f64 / (points - 1) as f64))
                .collect()
        }
    }
}

impl ExperimentConfig {
    pub fn new(dataset_dir: impl Into<PathBuf>, propagation: PropagationSpec) -> Self {
        Self {
            dataset_dir: dataset_dir.into(),
            propagation,
            normalization: NormalizationMode::default(),
            train: TrainOptions::default(),
            sweep: None,
            seed: 0,
            output_dir: None,
            bias: false,
            ablation: AblationOptions::default(),
            spectrum: SpectrumOptions::default(),
            bench: BenchOptions::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.propagation.validate()?;
        self.train.validate()?;
        if let Some(grid) = &self.sweep {
            if grid.is_empty() {
                return Err(Error::Config("sweep grid is empty".into()));
            }
            if let Some(v) = grid.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(Error::Config(format!("sweep value {v} must be finite and >= 0")));
            }
        }
        for spec in &self.spectrum.filters {
            spec.validate()?;
        }
        if self.bench.trials == 0 {
            return Err(Error::Config("bench.trials must be >= 1".into()));
        }
        Ok(())
    }

    /// The configured grid, or the default one.
    pub fn grid(&self) -> Vec<f64> {
        self.sweep.clone().unwrap_or_else(default_weight_decay_grid)
    }

    pub fn with_weight_decay(&self, weight_decay: f64) -> Self {
        let mut c = self.clone();
        c.train.weight_decay = weight_decay;
        c
    }
}
