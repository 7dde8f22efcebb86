//! Tunes weight decay on the validation set over the default log grid.
//!
//! cargo run --release --example weight_decay_sweep -- data/citeseer

use sgc::experiments::{default_weight_decay_grid, sweep_weight_decay, ExperimentConfig};
use sgc::{PropagationKind, PropagationSpec};

fn main() -> sgc::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data/cora".into());
    let config = ExperimentConfig::new(&dir, PropagationSpec::new(PropagationKind::AugNormalizedAdjacency, 2));
    let (best, table) = sweep_weight_decay(&config, &default_weight_decay_grid())?;
    println!("{:>12} {:>8} {:>8}", "weight_decay", "val", "test");
    for r in &table {
        println!("{:>12.3e} {:>8.4} {:>8.4}", r.config.train.weight_decay, r.val_accuracy, r.test_accuracy);
    }
    println!(
        "best: weight decay {:.3e}, val {:.4}, test {:.4}",
        best.config.train.weight_decay, best.val_accuracy, best.test_accuracy
    );
    Ok(())
}
