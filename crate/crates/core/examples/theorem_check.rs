//! Checks on random connected graphs that adding self-loops shrinks the
//! largest eigenvalue of the normalized Laplacian.

use sgc::data::XorShift64Star;
use sgc::spectral::{verify_spectrum_theorem, DEFAULT_THEOREM_TOL};
use sgc::{build_graph, DuplicatePolicy, Graph};

fn random_connected(rng: &mut XorShift64Star, n: usize, p: f64) -> sgc::Result<Graph> {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 > p {
                    continue;
                }
                edges.push((u, v, 1.0));
            }
        }
        let g = build_graph(&edges, n, DuplicatePolicy::Error)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}

fn main() -> sgc::Result<()> {
    let mut rng = XorShift64Star::new(1);
    println!("{:>4} {:>6} {:>10} {:>10} {:>8}", "n", "gamma", "lambda_max", "aug_max", "holds");
    for trial in 0..10 {
        let n = 10 + 4 * trial;
        let g = random_connected(&mut rng, n, 0.15)?;
        for gamma in [0.5, 1.0, 2.0] {
            let r = verify_spectrum_theorem(&g, gamma, DEFAULT_THEOREM_TOL)?;
            println!("{n:>4} {gamma:>6} {:>10.4} {:>10.4} {:>8}", r.lambda_max, r.aug_lambda_max, r.theorem1_holds);
        }
    }
    Ok(())
}
