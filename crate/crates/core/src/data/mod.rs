//! Dataset loading, feature normalization and random balanced splits.
//!
//! A dataset directory holds four files:
//!
//! - `edges.tsv`: `u<TAB>v[<TAB>weight]` per line, `#` comments allowed.
//! - `features.tsv`: `node<TAB>idx:val idx:val ...` (sparse) or
//!   `node<TAB>v0<TAB>v1...` (dense), detected by the presence of `:`.
//! - `labels.tsv`: `node<TAB>class`; nodes without a line are unlabeled.
//! - `split.json`: `{"train": [...], "val": [...], "test": [...]}`.

mod bundle;
mod normalize;
mod split;

pub use bundle::{load_dataset, read_features, read_labels, DatasetBundle};
pub use normalize::{normalize_features, NormalizationMode};
pub use split::{random_balanced_split, XorShift64Star};
