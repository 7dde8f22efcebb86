//! Median precompute and training times for several K and epoch budgets.
//!
//! cargo run --release --example bench -- data/pubmed

use sgc::data::load_dataset;
use sgc::experiments::{bench_bundle, with_epochs, ExperimentConfig};
use sgc::{PropagationKind, PropagationSpec};

fn main() -> sgc::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data/cora".into());
    let bundle = load_dataset(dir.as_ref())?;
    println!("{:>3} {:>7} {:>12} {:>10} {:>10}", "K", "epochs", "precompute", "train", "total");
    for k in [1, 2, 4] {
        for epochs in [100, 200] {
            let mut config = ExperimentConfig::new(&dir, PropagationSpec::new(PropagationKind::AugNormalizedAdjacency, k));
            config.train = with_epochs(&config.train, epochs);
            let r = bench_bundle(&bundle, &config, 1, 5)?;
            println!(
                "{k:>3} {epochs:>7} {:>11.4}s {:>9.4}s {:>9.4}s",
                r.precompute_seconds, r.train_seconds, r.total_seconds
            );
        }
    }
    Ok(())
}
