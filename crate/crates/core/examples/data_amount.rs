//! Validation accuracy against the number of labeled nodes per class,
//! averaged over random balanced splits.
//!
//! cargo run --release --example data_amount -- data/cora

use sgc::experiments::{ablate_data_amount, ExperimentConfig};
use sgc::{PropagationKind, PropagationSpec};

fn main() -> sgc::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data/cora".into());
    let mut config = ExperimentConfig::new(&dir, PropagationSpec::new(PropagationKind::AugNormalizedAdjacency, 2));
    config.train.weight_decay = 1e-5;
    let rows = ablate_data_amount(&config, &[1, 5, 10, 20, 40, 80], 10)?;
    println!("{:>9} {:>8} {:>8}", "per_class", "mean", "std");
    for r in rows {
        println!("{:>9} {:>8.4} {:>8.4}", r.per_class, r.mean_val_acc, r.std_val_acc);
    }
    Ok(())
}
