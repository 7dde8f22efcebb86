//! Multinomial logistic regression on synthetic clusters with each
//! optimizer, then a save/load round trip of the weights.

use sgc::classifier::{accuracy, load_weights, one_hot, predict, save_weights, train, Optimizer, TrainOptions};
use sgc::data::XorShift64Star;
use sgc::DenseMatrix;

fn uniform(rng: &mut XorShift64Star) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

fn main() -> sgc::Result<()> {
    let (n, d, c) = (300, 5, 3);
    let mut rng = XorShift64Star::new(9);
    let labels: Vec<i64> = (0..n).map(|i| (i % c) as i64).collect();
    let mut values = Vec::with_capacity(n * d);
    for &y in &labels {
        for j in 0..d {
            let center = if j == y as usize { 1.5 } else { 0.0 };
            values.push(center + uniform(&mut rng) - 0.5);
        }
    }
    let x = DenseMatrix::new(n, d, values)?;
    let y = one_hot(&labels, c)?;
    let train_mask: Vec<usize> = (0..n / 2).collect();
    let test_mask: Vec<usize> = (n / 2..n).collect();

    for optimizer in [Optimizer::GradientDescent, Optimizer::AdaptiveMoment, Optimizer::QuasiNewton] {
        let opts = TrainOptions { optimizer, weight_decay: 1e-3, ..TrainOptions::default() };
        let params = train(&x, &y, &train_mask, &opts)?;
        let acc = accuracy(&predict(&params.theta, &x)?, &labels, &test_mask)?;
        println!(
            "{optimizer:?}: epochs {:>3}, loss {:.5}, test accuracy {acc:.3}",
            params.epochs_run, params.final_loss
        );
    }

    let params = train(&x, &y, &train_mask, &TrainOptions::default())?;
    let path = std::env::temp_dir().join("sgc_example_model.bin");
    save_weights(&path, &params.theta)?;
    assert_eq!(load_weights(&path)?, params.theta);
    println!("weights round-tripped through {}", path.display());
    std::fs::remove_file(path)?;
    Ok(())
}
