//! Numerical checks of how self-loops shrink the normalized Laplacian
//! spectrum.
//!
//! For a graph without isolated nodes and `γ > 0`, with `λ` the spectrum of
//! `Δ_sym`, `λ̃` that of `Δ̃_sym`, `β` that of `D^-1/2 A D^-1/2` and `α` that
//! of `D̃^-1/2 A D̃^-1/2`, the checked relations are
//!
//! ```text
//! 0 = λ_1 = λ̃_1 < λ̃_n < λ_n
//! α_1 ≥ d_max / (γ + d_max) · β_1
//! α_n ≤ d_min / (γ + d_min)
//! ```
//!
//! The last bound does not hold on irregular graphs (the 3-node path with
//! `γ = 1` has `α_n = 1/√3 > 1/2`); the report also records the weaker
//! `α_n ≤ d_max / (γ + d_max)`, which always holds.

use serde::{Deserialize, Serialize};

use super::eigen::{dense_eigenvalues, extreme_eigenvalues_with, EigenOptions};
use super::laplacian::{augmented_scaled_adjacency, laplacian, scaled_adjacency};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_THEOREM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub gamma: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub aug_lambda_min: f64,
    pub aug_lambda_max: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub theorem1_holds: bool,
    pub lemma3_lower_holds: bool,
    pub lemma3_upper_holds: bool,
    pub lemma3_upper_dmax_holds: bool,
    pub tolerance: f64,
}

impl SpectrumReport {
    /// `quantity,value` rows, one per field.
    pub fn to_csv(&self) -> String {
        let b = |v: bool| if v { "true" } else { "false" };
        let rows: [(&str, String); 14] = [
            ("gamma", self.gamma.to_string()),
            ("lambda_min", self.lambda_min.to_string()),
            ("lambda_max", self.lambda_max.to_string()),
            ("aug_lambda_min", self.aug_lambda_min.to_string()),
            ("aug_lambda_max", self.aug_lambda_max.to_string()),
            ("alpha_min", self.alpha_min.to_string()),
            ("alpha_max", self.alpha_max.to_string()),
            ("beta_min", self.beta_min.to_string()),
            ("beta_max", self.beta_max.to_string()),
            ("theorem1_holds", b(self.theorem1_holds).into()),
            ("lemma3_lower_holds", b(self.lemma3_lower_holds).into()),
            ("lemma3_upper_holds", b(self.lemma3_upper_holds).into()),
            ("lemma3_upper_dmax_holds", b(self.lemma3_upper_dmax_holds).into()),
            ("tolerance", self.tolerance.to_string()),
        ];
        let mut out = String::from("quantity,value\n");
        for (name, value) in rows {
            out.push_str(&format!("{name},{value}\n"));
        }
        out
    }
}

/// Checks the spectrum-shrinking relations on a connected graph.
///
/// Rejects graphs with isolated nodes and disconnected graphs, the latter
/// detected as a second-smallest `Δ_sym` eigenvalue below `tol` on the dense
/// path (or by traversal above the dense cap).
pub fn verify_spectrum_theorem(graph: &Graph, gamma: f64, tol: f64) -> Result<SpectrumReport> {
    verify_spectrum_theorem_with(graph, gamma, tol, &EigenOptions::default())
}

pub fn verify_spectrum_theorem_with(
    graph: &Graph,
    gamma: f64,
    tol: f64,
    opts: &EigenOptions,
) -> Result<SpectrumReport> {
    graph.require_no_isolated()?;
    if graph.n() <= opts.dense_cap {
        let values = dense_eigenvalues(&laplacian(graph, false, 0.0)?, opts.dense_cap)?;
        if let Some(&lambda2) = values.get(1) {
            if lambda2 < tol {
                return Err(Error::Disconnected { lambda2 });
            }
        }
    } else if !graph.is_connected() {
        return Err(Error::Disconnected { lambda2: 0.0 });
    }
    spectrum_quantities(graph, gamma, tol, opts)
}

/// Computes every report quantity without the connectivity precondition.
pub fn spectrum_quantities(graph: &Graph, gamma: f64, tol: f64, opts: &EigenOptions) -> Result<SpectrumReport> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::Value(format!("gamma must be > 0, got {gamma}")));
    }
    graph.require_no_isolated()?;

    let (lambda_min, lambda_max) = extreme_eigenvalues_with(&laplacian(graph, false, 0.0)?, tol, opts)?;
    let (aug_lambda_min, aug_lambda_max) = extreme_eigenvalues_with(&laplacian(graph, true, gamma)?, tol, opts)?;
    let (beta_min, beta_max) = extreme_eigenvalues_with(&scaled_adjacency(graph)?, tol, opts)?;
    let (alpha_min, alpha_max) = extreme_eigenvalues_with(&augmented_scaled_adjacency(graph, gamma)?, tol, opts)?;

    let d_max = graph.degrees().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let d_min = graph.degrees().iter().copied().fold(f64::INFINITY, f64::min);

    let theorem1_holds =
        lambda_min.abs() <= tol && aug_lambda_min.abs() <= tol && aug_lambda_max < lambda_max - tol;
    let lemma3_lower_holds = alpha_min >= d_max / (gamma + d_max) * beta_min - tol;
    let lemma3_upper_holds = alpha_max <= d_min / (gamma + d_min) + tol;
    let lemma3_upper_dmax_holds = alpha_max <= d_max / (gamma + d_max) + tol;

    Ok(SpectrumReport {
        gamma,
        lambda_min,
        lambda_max,
        aug_lambda_min,
        aug_lambda_max,
        alpha_min,
        alpha_max,
        beta_min,
        beta_max,
        theorem1_holds,
        lemma3_lower_holds,
        lemma3_upper_holds,
        lemma3_upper_dmax_holds,
        tolerance: tol,
    })
}

/// Relative residual `‖Δ̃_sym D̃^{1/2} 1‖ / ‖D̃^{1/2} 1‖`; zero in exact
/// arithmetic because `D̃^{1/2} 1` spans a null direction of `Δ̃_sym`.
pub fn null_vector_residual(graph: &Graph, gamma: f64) -> Result<f64> {
    let lap = laplacian(graph, true, gamma)?;
    let v: Vec<f64> = graph.degrees().iter().map(|d| (d + gamma).sqrt()).collect();
    let mut out = vec![0.0; v.len()];
    lap.spmv(&v, &mut out);
    let num = out.iter().map(|x| x * x).sum::<f64>().sqrt();
    let den = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, DuplicatePolicy};

    #[test]
    fn p2_report() {
        let g = build_graph(&[(0, 1, 1.0)], 2, DuplicatePolicy::Error).unwrap();
        let r = verify_spectrum_theorem(&g, 1.0, DEFAULT_THEOREM_TOL).unwrap();
        assert!(r.lambda_min.abs() < 1e-12);
        assert!((r.lambda_max - 2.0).abs() < 1e-12);
        assert!(r.aug_lambda_min.abs() < 1e-12);
        assert!((r.aug_lambda_max - 1.0).abs() < 1e-12);
        assert!(r.theorem1_holds && r.lemma3_lower_holds && r.lemma3_upper_holds);
    }

    #[test]
    fn path_p3_breaks_min_degree_bound() {
        let g = build_graph(&[(0, 1, 1.0), (1, 2, 1.0)], 3, DuplicatePolicy::Error).unwrap();
        let r = verify_spectrum_theorem(&g, 1.0, DEFAULT_THEOREM_TOL).unwrap();
        assert!((r.alpha_max - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!(r.theorem1_holds && r.lemma3_lower_holds);
        assert!(!r.lemma3_upper_holds);
        assert!(r.lemma3_upper_dmax_holds);
    }

    #[test]
    fn rejects_disconnected_and_isolated() {
        let two_edges = build_graph(&[(0, 1, 1.0), (2, 3, 1.0)], 4, DuplicatePolicy::Error).unwrap();
        assert!(matches!(
            verify_spectrum_theorem(&two_edges, 1.0, DEFAULT_THEOREM_TOL),
            Err(Error::Disconnected { .. })
        ));
        let isolated = build_graph(&[(0, 1, 1.0)], 3, DuplicatePolicy::Error).unwrap();
        assert!(matches!(
            verify_spectrum_theorem(&isolated, 1.0, DEFAULT_THEOREM_TOL),
            Err(Error::IsolatedNode(2))
        ));
    }

    #[test]
    fn csv_has_one_row_per_quantity() {
        let g = build_graph(&[(0, 1, 1.0)], 2, DuplicatePolicy::Error).unwrap();
        let csv = verify_spectrum_theorem(&g, 1.0, 1e-8).unwrap().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "quantity,value");
        assert_eq!(lines.len(), 15);
        assert!(lines.iter().all(|l| l.split(',').count() == 2));
    }
}
