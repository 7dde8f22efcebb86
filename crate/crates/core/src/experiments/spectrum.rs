use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::data::{load_dataset, normalize_features, DatasetBundle};
use crate::error::{Error, Result};
use crate::spectral::{
    dense_eigendecomposition_capped, filter_response, laplacian, spectral_coefficients, spectrum_quantities,
    EigenOptions, FilterCurve, SpectrumReport,
};

/// Everything the `spectrum` verb writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumArtifacts {
    pub report: SpectrumReport,
    pub curves: Vec<FilterCurve>,
    /// `(λ̃_i, x̂_i)` for the configured feature column, ascending in `λ̃`.
    pub fourier: Option<Vec<(f64, f64)>>,
    /// Why `fourier` is absent, if it is.
    pub fourier_skipped: Option<String>,
}

pub fn fourier_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("lambda,x_hat\n");
    for (l, x) in points {
        out.push_str(&format!("{l},{x}\n"));
    }
    out
}

/// Samples `points` evenly spaced values on `[0, 2]`.
pub fn lambda_samples(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|i| 2.0 * i as f64 / (points - 1) as f64).collect(),
    }
}

/// Spectrum quantities of the dataset graph, filter curves and, when the
/// graph fits the dense solver, the graph Fourier coefficients of one
/// normalized feature column on the augmented Laplacian basis.
///
/// Graphs with several components are reported as is; only isolated nodes
/// are rejected.
pub fn spectrum_report(config: &ExperimentConfig) -> Result<SpectrumArtifacts> {
    config.validate()?;
    let bundle = load_dataset(&config.dataset_dir)?;
    spectrum_report_bundle(&bundle, config, &EigenOptions::default())
}

pub fn spectrum_report_bundle(
    bundle: &DatasetBundle,
    config: &ExperimentConfig,
    opts: &EigenOptions,
) -> Result<SpectrumArtifacts> {
    let so = &config.spectrum;
    let gamma = config.propagation.gamma;
    let report = spectrum_quantities(&bundle.graph, gamma, so.tolerance, opts)?;

    let lambdas = lambda_samples(so.curve_points);
    let curves = so.filters.iter().map(|f| filter_response(f.kind, f.k, &lambdas)).collect();

    let (fourier, fourier_skipped) = match fourier(bundle, config, opts) {
        Ok(points) => (Some(points), None),
        Err(e @ Error::Size { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(SpectrumArtifacts { report, curves, fourier, fourier_skipped })
}

fn fourier(bundle: &DatasetBundle, config: &ExperimentConfig, opts: &EigenOptions) -> Result<Vec<(f64, f64)>> {
    let col = config.spectrum.fourier_feature;
    if col >= bundle.features.n_cols() {
        return Err(Error::Config(format!(
            "fourier_feature {col} but features have {} columns",
            bundle.features.n_cols()
        )));
    }
    let lap = laplacian(&bundle.graph, true, config.propagation.gamma)?;
    if lap.n_rows() > opts.dense_cap {
        return Err(Error::Size { n: lap.n_rows(), cap: opts.dense_cap });
    }
    let (values, vectors) = dense_eigendecomposition_capped(&lap, opts.dense_cap)?;
    let x = normalize_features(&bundle.features, config.normalization).column(col);
    let coeffs = spectral_coefficients(&vectors, &x)?;
    Ok(values.into_iter().zip(coeffs).collect())
}
