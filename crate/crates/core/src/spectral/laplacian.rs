use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::propagation::{augmented_normalized, normalized_adjacency};
use crate::sparse::SparseMatrix;

/// Normalized graph Laplacian.
///
/// With `augmented = false` returns `I - D^-1/2 A D^-1/2` (requires no
/// isolated nodes). With `augmented = true` returns
/// `I - D̃^-1/2 (A + γI) D̃^-1/2` with `D̃ = D + γI` (requires `γ > 0`).
pub fn laplacian(graph: &Graph, augmented: bool, gamma: f64) -> Result<SparseMatrix> {
    if augmented {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Value(format!("augmented Laplacian requires gamma > 0, got {gamma}")));
        }
        augmented_normalized(graph, gamma, gamma)?.shifted(1.0, -1.0)
    } else {
        normalized_adjacency(graph)?.shifted(1.0, -1.0)
    }
}

/// `D̃^-1/2 A D̃^-1/2`: the augmented normalization applied to the bare
/// adjacency (no self-loops in the numerator).
pub fn augmented_scaled_adjacency(graph: &Graph, gamma: f64) -> Result<SparseMatrix> {
    augmented_normalized(graph, gamma, 0.0)
}

/// `D^-1/2 A D^-1/2`.
pub fn scaled_adjacency(graph: &Graph) -> Result<SparseMatrix> {
    normalized_adjacency(graph)
}
