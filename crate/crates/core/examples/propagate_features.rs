//! Smooths node features over a small graph with each propagation kind.
//!
//! A 6-node path with one-hot features shows how mass spreads with K, and
//! how the augmented kinds keep a share at the source node.

use sgc::{build_graph, build_propagation, propagate, DenseMatrix, DuplicatePolicy, PropagationKind, PropagationSpec};

fn main() -> sgc::Result<()> {
    let n = 6;
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
    let graph = build_graph(&edges, n, DuplicatePolicy::Error)?;
    let mut one_hot = vec![0.0; n];
    one_hot[0] = 1.0;
    let x = DenseMatrix::column_vector(&one_hot)?;

    for kind in PropagationKind::ALL {
        println!("{kind}");
        let s = build_propagation(&graph, &PropagationSpec::new(kind, 1))?;
        for k in [1, 2, 3, 4] {
            let y = propagate(&s, &x, k)?;
            let cells: Vec<String> = y.as_slice().iter().map(|v| format!("{v:6.3}")).collect();
            println!("  K={k}: [{}]", cells.join(" "));
        }
    }
    Ok(())
}
