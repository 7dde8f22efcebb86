//! Frequency responses of the fixed filters behind each propagation kind.
//!
//! Un-augmented kinds respond with `(1 - λ)^K`, which turns negative above
//! `λ = 1` for odd K; the first-order Chebyshev filter `(2 - λ)^K` grows
//! without bound at low frequencies.

use sgc::experiments::lambda_samples;
use sgc::spectral::filter_response;
use sgc::PropagationKind;

fn main() {
    let lambdas = lambda_samples(9);
    print!("{:<24}", "filter");
    for l in &lambdas {
        print!("{l:>8.2}");
    }
    println!();
    for kind in [PropagationKind::NormalizedAdjacency, PropagationKind::FirstOrderCheby] {
        for k in 1..=4 {
            let curve = filter_response(kind, k, &lambdas);
            print!("{:<24}", format!("{kind} K={k}"));
            for (_, g) in &curve.points {
                print!("{g:>8.3}");
            }
            println!();
        }
    }
}
