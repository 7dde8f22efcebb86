use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Variants are grouped by the CLI exit code they map to: configuration
/// problems (2), data problems (3) and numerical failures (4).
#[derive(Debug, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    Index(String),

    #[error("invalid value: {0}")]
    Value(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("self-loop on node {0} in input edge list")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("node {0} is isolated (degree 0)")]
    IsolatedNode(usize),

    #[error("matrix is not symmetric: |m[{row}][{col}] - m[{col}][{row}]| = {diff:e}")]
    Asymmetric { row: usize, col: usize, diff: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (best residual {best_residual:e})")]
    Convergence { iterations: usize, best_residual: f64 },

    #[error("matrix dimension {n} exceeds the dense cap {cap}")]
    Size { n: usize, cap: usize },

    #[error("graph is disconnected (second smallest Laplacian eigenvalue {lambda2:e})")]
    Disconnected { lambda2: f64 },

    #[error("node mask is empty")]
    EmptyMask,

    #[error("loss became non-finite at epoch {epoch}; the learning rate is likely too high")]
    Divergence { epoch: usize },

    #[error("missing file: {}", .0.display())]
    MissingFile(PathBuf),

    #[error("{}:{line}: {msg}", path.display())]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("invalid split: {0}")]
    Split(String),

    #[error("class {class} has only {available} eligible nodes, {requested} requested")]
    InsufficientClass { class: usize, available: usize, requested: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the `sgc` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::MissingFile(_)
            | Error::Parse { .. }
            | Error::Split(_)
            | Error::Index(_)
            | Error::SelfLoop(_)
            | Error::DuplicateEdge(..)
            | Error::InsufficientClass { .. }
            | Error::Io(_) => 3,
            Error::Value(_)
            | Error::Shape(_)
            | Error::IsolatedNode(_)
            | Error::Asymmetric { .. }
            | Error::Convergence { .. }
            | Error::Size { .. }
            | Error::Disconnected { .. }
            | Error::EmptyMask
            | Error::Divergence { .. } => 4,
        }
    }
}
