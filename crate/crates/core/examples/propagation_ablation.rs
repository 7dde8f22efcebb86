//! Validation accuracy for every propagation kind and K = 1..=10 on a
//! dataset directory, weight decay tuned per cell.
//!
//! cargo run --release --example propagation_ablation -- data/cora

use sgc::data::load_dataset;
use sgc::experiments::{ablate_propagation_bundle, default_weight_decay_grid, ExperimentConfig};
use sgc::{PropagationKind, PropagationSpec};

fn main() -> sgc::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data/cora".into());
    let mut config = ExperimentConfig::new(&dir, PropagationSpec::new(PropagationKind::AugNormalizedAdjacency, 2));
    config.sweep = Some(default_weight_decay_grid());
    let bundle = load_dataset(&config.dataset_dir)?;
    let ks: Vec<usize> = (1..=10).collect();
    let rows = ablate_propagation_bundle(&bundle, &config, &PropagationKind::ALL, &ks)?;

    print!("{:<18}", "kind");
    for k in &ks {
        print!("{:>7}", format!("K={k}"));
    }
    println!();
    for chunk in rows.chunks(ks.len()) {
        print!("{:<18}", chunk[0].kind.as_str());
        for row in chunk {
            match &row.outcome {
                Ok((_, acc)) => print!("{:>7.3}", acc),
                Err(_) => print!("{:>7}", "err"),
            }
        }
        println!();
    }
    Ok(())
}
