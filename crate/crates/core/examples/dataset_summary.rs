//! Loads a dataset directory and prints its statistics, the effect of each
//! feature normalization and a balanced random training split.
//!
//! cargo run --release --example dataset_summary -- data/citeseer

use sgc::data::{load_dataset, normalize_features, random_balanced_split, NormalizationMode};

fn main() -> sgc::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data/cora".into());
    let b = load_dataset(dir.as_ref())?;
    println!("nodes {}  edge records {}  undirected edges {}", b.n(), b.edge_records, b.graph.n_edges());
    println!("features {}  classes {}", b.features.n_cols(), b.n_classes);
    println!("split {}/{}/{}", b.train_mask.len(), b.val_mask.len(), b.test_mask.len());
    println!("components {}  isolated nodes {}", b.graph.n_components(), b.graph.isolated_nodes().len());

    for mode in [NormalizationMode::None, NormalizationMode::RowL1, NormalizationMode::Standardize] {
        let x = normalize_features(&b.features, mode);
        let row_sum: f64 = x.row(0).iter().map(|v| v.abs()).sum();
        println!("{mode:?}: |row 0|_1 = {row_sum:.4}");
    }

    let mut excluded = b.val_mask.clone();
    excluded.extend(&b.test_mask);
    let split = random_balanced_split(&b.labels, 20, 0, &excluded)?;
    println!("balanced split with 20 per class: {} nodes, first {:?}", split.len(), &split[..5.min(split.len())]);
    Ok(())
}
