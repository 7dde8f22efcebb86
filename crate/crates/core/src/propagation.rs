//! Propagation matrices and K-step feature propagation.
//!
//! The five operators, for adjacency `A`, degrees `D`, `Ã = A + γI` and
//! `D̃ = D + γI`:
//!
//! | kind                | matrix                     |
//! |---------------------|----------------------------|
//! | `norm_adj`          | `D^-1/2 A D^-1/2`          |
//! | `rw`                | `D^-1 A`                   |
//! | `aug_norm_adj`      | `D̃^-1/2 Ã D̃^-1/2`          |
//! | `aug_rw`            | `D̃^-1 Ã`                   |
//! | `first_order_cheby` | `I + D^-1/2 A D^-1/2`      |
//!
//! Propagating `K` steps applies the operator `K` times with sparse-dense
//! products; the power `S^K` is never formed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sparse::{csr_from_triplets, spmm, SparseMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PropagationKind {
    #[serde(rename = "norm_adj")]
    NormalizedAdjacency,
    #[serde(rename = "rw")]
    RandomWalk,
    #[serde(rename = "aug_norm_adj")]
    AugNormalizedAdjacency,
    #[serde(rename = "aug_rw")]
    AugRandomWalk,
    #[serde(rename = "first_order_cheby")]
    FirstOrderCheby,
}

impl PropagationKind {
    pub const ALL: [PropagationKind; 5] = [
        PropagationKind::NormalizedAdjacency,
        PropagationKind::RandomWalk,
        PropagationKind::AugNormalizedAdjacency,
        PropagationKind::AugRandomWalk,
        PropagationKind::FirstOrderCheby,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropagationKind::NormalizedAdjacency => "norm_adj",
            PropagationKind::RandomWalk => "rw",
            PropagationKind::AugNormalizedAdjacency => "aug_norm_adj",
            PropagationKind::AugRandomWalk => "aug_rw",
            PropagationKind::FirstOrderCheby => "first_order_cheby",
        }
    }

    /// Whether the operator adds `γI` self-loops before normalizing.
    pub fn is_augmented(self) -> bool {
        matches!(self, PropagationKind::AugNormalizedAdjacency | PropagationKind::AugRandomWalk)
    }

    pub fn is_symmetric(self) -> bool {
        !matches!(self, PropagationKind::RandomWalk | PropagationKind::AugRandomWalk)
    }

    pub fn is_row_stochastic(self) -> bool {
        matches!(self, PropagationKind::RandomWalk | PropagationKind::AugRandomWalk)
    }
}

impl fmt::Display for PropagationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropagationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropagationKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown propagation kind {s:?}")))
    }
}

fn default_gamma() -> f64 {
    1.0
}

/// Which operator to build, its self-loop weight and the number of steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationSpec {
    pub kind: PropagationKind,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(rename = "K", alias = "k")]
    pub k: usize,
}

impl PropagationSpec {
    pub fn new(kind: PropagationKind, k: usize) -> Self {
        Self { kind, gamma: 1.0, k }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::Config(format!("gamma must be finite and >= 0, got {}", self.gamma)));
        }
        if self.kind.is_augmented() && self.gamma <= 0.0 {
            return Err(Error::Config(format!("{} requires gamma > 0", self.kind)));
        }
        Ok(())
    }
}

/// `D^-1/2 A D^-1/2`, the shared core of several operators.
pub(crate) fn normalized_adjacency(graph: &Graph) -> Result<SparseMatrix> {
    graph.require_no_isolated()?;
    symmetric_scale(graph.adjacency(), graph.degrees())
}

/// `D̃^-1/2 (A + extra_diag·I) D̃^-1/2` with `D̃ = D + γI`.
pub(crate) fn augmented_normalized(graph: &Graph, gamma: f64, extra_diag: f64) -> Result<SparseMatrix> {
    let degrees: Vec<f64> = graph.degrees().iter().map(|d| d + gamma).collect();
    let shifted = graph.adjacency().shifted(extra_diag, 1.0)?;
    symmetric_scale(&shifted, &degrees)
}

// Entry (r, c) becomes `v / sqrt(d[r] * d[c])`. The product is commutative,
// so a symmetric input stays exactly symmetric.
fn symmetric_scale(m: &SparseMatrix, d: &[f64]) -> Result<SparseMatrix> {
    let triplets: Vec<_> = m.triplets().map(|(r, c, v)| (r, c, v / (d[r] * d[c]).sqrt())).collect();
    csr_from_triplets(&triplets, m.n_rows(), m.n_cols())
}

/// Builds the propagation matrix described by `spec`.
///
/// Un-augmented kinds reject graphs with isolated nodes.
pub fn build_propagation(graph: &Graph, spec: &PropagationSpec) -> Result<SparseMatrix> {
    spec.validate()?;
    let n = graph.n();
    match spec.kind {
        PropagationKind::NormalizedAdjacency => normalized_adjacency(graph),
        PropagationKind::RandomWalk => {
            graph.require_no_isolated()?;
            let inv: Vec<f64> = graph.degrees().iter().map(|d| 1.0 / d).collect();
            graph.adjacency().scale_rows_cols(&inv, &vec![1.0; n])
        }
        PropagationKind::AugNormalizedAdjacency => augmented_normalized(graph, spec.gamma, spec.gamma),
        PropagationKind::AugRandomWalk => {
            let inv: Vec<f64> = graph.degrees().iter().map(|d| 1.0 / (d + spec.gamma)).collect();
            graph
                .adjacency()
                .shifted(spec.gamma, 1.0)?
                .scale_rows_cols(&inv, &vec![1.0; n])
        }
        PropagationKind::FirstOrderCheby => normalized_adjacency(graph)?.shifted(1.0, 1.0),
    }
}

/// Computes `S^K X` as `K` successive sparse-dense products.
pub fn propagate(s: &SparseMatrix, x: &DenseMatrix, k: usize) -> Result<DenseMatrix> {
    if !s.is_square() {
        return Err(Error::Shape(format!(
            "propagation matrix must be square, got {}x{}",
            s.n_rows(),
            s.n_cols()
        )));
    }
    if s.n_cols() != x.n_rows() {
        return Err(Error::Shape(format!(
            "propagation matrix is {}x{} but features have {} rows",
            s.n_rows(),
            s.n_cols(),
            x.n_rows()
        )));
    }
    let mut out = x.clone();
    for _ in 0..k {
        out = spmm(s, &out)?;
    }
    Ok(out)
}
