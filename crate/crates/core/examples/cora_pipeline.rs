//! One end-to-end run: normalize, propagate with K = 2, train, evaluate,
//! and write `result.json` plus `model.bin`.
//!
//! cargo run --release --example cora_pipeline -- data/cora out/cora

use sgc::experiments::{run_to_dir, ExperimentConfig};
use sgc::{PropagationKind, PropagationSpec};

fn main() -> sgc::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = args.next().unwrap_or_else(|| "data/cora".into());
    let out = args.next().unwrap_or_else(|| "out/cora".into());
    let mut config = ExperimentConfig::new(&dir, PropagationSpec::new(PropagationKind::AugNormalizedAdjacency, 2));
    config.train.weight_decay = 5e-6;
    let r = run_to_dir(&config, out.as_ref())?;
    println!("val accuracy {:.4}, test accuracy {:.4}", r.val_accuracy, r.test_accuracy);
    println!("precompute {:.3}s, train {:.3}s, {} epochs", r.precompute_seconds, r.train_seconds, r.epochs_run);
    println!("wrote {out}/result.json and {out}/model.bin");
    Ok(())
}
