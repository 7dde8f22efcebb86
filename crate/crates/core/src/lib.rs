//! Simple Graph Convolution.
//!
//! Node classification with a fixed low-pass graph filter followed by a
//! linear classifier:
//!
//! ```text
//! Ŷ = softmax(S^K X Θ)
//! ```
//!
//! `S^K X` is computed once with sparse-dense products ([`propagation`]),
//! after which training is plain multinomial logistic regression
//! ([`classifier`]). The [`spectral`] module builds normalized Laplacians,
//! computes their spectra and filter responses, and checks how adding
//! self-loops shrinks the spectrum. [`data`] reads datasets in a plain-text
//! interchange format and [`experiments`] wires everything into
//! reproducible runs, sweeps and ablations.

pub mod classifier;
pub mod data;
pub mod dense;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod propagation;
pub mod sparse;
pub mod spectral;

pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use graph::{build_graph, DuplicatePolicy, Graph};
pub use propagation::{build_propagation, propagate, PropagationKind, PropagationSpec};
pub use sparse::{csr_from_triplets, spmm, SparseMatrix};
