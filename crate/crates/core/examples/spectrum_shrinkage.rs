//! Largest Laplacian eigenvalue with and without self-loops on a dataset
//! graph, plus the full spectrum-shrinking report.
//!
//! cargo run --release --example spectrum_shrinkage -- data/cora

use sgc::data::load_dataset;
use sgc::spectral::{spectrum_quantities, EigenOptions, DEFAULT_THEOREM_TOL};

fn main() -> sgc::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data/cora".into());
    let bundle = load_dataset(dir.as_ref())?;
    println!("n = {}, edges = {}", bundle.n(), bundle.graph.n_edges());
    for gamma in [0.5, 1.0, 2.0] {
        let r = spectrum_quantities(&bundle.graph, gamma, DEFAULT_THEOREM_TOL, &EigenOptions::default())?;
        println!(
            "gamma={gamma}: lambda_max={:.17} aug_lambda_max={:.17} theorem holds: {}",
            r.lambda_max, r.aug_lambda_max, r.theorem1_holds
        );
    }
    Ok(())
}
