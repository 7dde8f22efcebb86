//! Graph Fourier transform of a signal on a ring, and the effect of a
//! low-pass filter on its spectral coefficients.

use sgc::spectral::{dense_eigendecomposition, laplacian, spectral_coefficients};
use sgc::{build_graph, build_propagation, propagate, DenseMatrix, DuplicatePolicy, PropagationKind, PropagationSpec};

fn main() -> sgc::Result<()> {
    let n = 8;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    let graph = build_graph(&edges, n, DuplicatePolicy::Error)?;
    let lap = laplacian(&graph, true, 1.0)?;
    let (lambdas, u) = dense_eigendecomposition(&lap)?;

    // A slow wave plus alternating high-frequency noise.
    let x: Vec<f64> = (0..n)
        .map(|i| (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos() + if i % 2 == 0 { 0.5 } else { -0.5 })
        .collect();
    let s = build_propagation(&graph, &PropagationSpec::new(PropagationKind::AugNormalizedAdjacency, 2))?;
    let smoothed = propagate(&s, &DenseMatrix::column_vector(&x)?, 2)?;

    let before = spectral_coefficients(&u, &x)?;
    let after = spectral_coefficients(&u, smoothed.as_slice())?;
    println!("{:>8} {:>10} {:>10}", "lambda", "x_hat", "filtered");
    for i in 0..n {
        println!("{:>8.4} {:>10.4} {:>10.4}", lambdas[i], before[i], after[i]);
    }
    Ok(())
}
