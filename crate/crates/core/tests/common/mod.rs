#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgc::{build_graph, DenseMatrix, DuplicatePolicy, Graph, SparseMatrix};

pub type Rows = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bundled datasets: `$SGC_DATA_DIR` or `<workspace>/data`.
pub fn data_dir() -> PathBuf {
    std::env::var_os("SGC_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

pub fn dataset(name: &str) -> PathBuf {
    data_dir().join(name)
}

/// Erdős–Rényi edges with unit weights.
pub fn er_edges(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize, f64)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, 1.0));
            }
        }
    }
    edges
}

/// Rejection-samples a connected Erdős–Rényi graph.
pub fn connected_er(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = build_graph(&er_edges(rng, n, p), n, DuplicatePolicy::Error).unwrap();
        if g.is_connected() && g.isolated_nodes().is_empty() {
            return g;
        }
    }
}

/// Random graph without isolated nodes, weights in (0.5, 2).
pub fn weighted_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    loop {
        let edges: Vec<_> = er_edges(rng, n, p)
            .into_iter()
            .map(|(u, v, _)| (u, v, rng.gen_range(0.5..2.0)))
            .collect();
        let g = build_graph(&edges, n, DuplicatePolicy::Error).unwrap();
        if g.isolated_nodes().is_empty() {
            return g;
        }
    }
}

pub fn random_rows(rng: &mut impl Rng, n: usize, d: usize) -> Rows {
    (0..n).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect()
}

pub fn to_rows(m: &DenseMatrix) -> Rows {
    (0..m.n_rows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn sparse_rows(m: &SparseMatrix) -> Rows {
    let mut out = vec![vec![0.0; m.n_cols()]; m.n_rows()];
    for (r, c, v) in m.triplets() {
        out[r][c] += v;
    }
    out
}

pub fn matmul(a: &Rows, b: &Rows) -> Rows {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0.0; m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = 0.0;
            for t in 0..k {
                s += a[i][t] * b[t][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn max_diff(a: &Rows, b: &Rows) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| {
            assert_eq!(x.len(), y.len());
            x.iter().zip(y).map(|(p, q)| (p - q).abs())
        })
        .fold(0.0, f64::max)
}

pub fn dense_adjacency(g: &Graph) -> Rows {
    sparse_rows(g.adjacency())
}

/// Dense reference operators written straight from their definitions.
pub mod operators {
    use super::Rows;

    fn degrees(a: &Rows) -> Vec<f64> {
        a.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn norm_adj(a: &Rows) -> Rows {
        let d = degrees(a);
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| a[i][j] / (d[i].sqrt() * d[j].sqrt())).collect()).collect()
    }

    pub fn rw(a: &Rows) -> Rows {
        let d = degrees(a);
        a.iter().zip(&d).map(|(r, di)| r.iter().map(|v| v / di).collect()).collect()
    }

    fn with_loops(a: &Rows, gamma: f64) -> Rows {
        let mut out = a.clone();
        for (i, r) in out.iter_mut().enumerate() {
            r[i] += gamma;
        }
        out
    }

    pub fn aug_norm_adj(a: &Rows, gamma: f64) -> Rows {
        norm_adj(&with_loops(a, gamma))
    }

    pub fn aug_rw(a: &Rows, gamma: f64) -> Rows {
        rw(&with_loops(a, gamma))
    }

    pub fn first_order_cheby(a: &Rows) -> Rows {
        let mut out = norm_adj(a);
        for (i, r) in out.iter_mut().enumerate() {
            r[i] += 1.0;
        }
        out
    }

    /// `D̃^-1/2 A D̃^-1/2` (self-loops only in the degrees).
    pub fn aug_scaled(a: &Rows, gamma: f64) -> Rows {
        let d: Vec<f64> = degrees(a).iter().map(|d| d + gamma).collect();
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| a[i][j] / (d[i] * d[j]).sqrt()).collect()).collect()
    }

    pub fn identity_minus(m: &Rows) -> Rows {
        let n = m.len();
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 } - m[i][j]).collect()).collect()
    }
}

/// Cyclic Jacobi eigenvalue iteration for symmetric matrices.
/// Returns eigenvalues ascending.
pub fn jacobi_eigenvalues(m: &Rows) -> Vec<f64> {
    let n = m.len();
    let mut a = m.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (rp, rq) = (a[p].clone(), a[q].clone());
                for k in 0..n {
                    a[p][k] = c * rp[k] - s * rq[k];
                    a[q][k] = s * rp[k] + c * rq[k];
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Writes a dataset directory in the text interchange format.
pub fn write_dataset(
    dir: &Path,
    edges: &[(usize, usize)],
    features: &Rows,
    labels: &[i64],
    split: (&[usize], &[usize], &[usize]),
) {
    std::fs::create_dir_all(dir).unwrap();
    let mut e = String::from("# u\tv\n");
    for (u, v) in edges {
        e.push_str(&format!("{u}\t{v}\n"));
    }
    std::fs::write(dir.join("edges.tsv"), e).unwrap();
    let mut f = String::new();
    for (i, row) in features.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        f.push_str(&format!("{i}\t{}\n", cells.join("\t")));
    }
    std::fs::write(dir.join("features.tsv"), f).unwrap();
    let mut l = String::new();
    for (i, y) in labels.iter().enumerate() {
        if *y >= 0 {
            l.push_str(&format!("{i}\t{y}\n"));
        }
    }
    std::fs::write(dir.join("labels.tsv"), l).unwrap();
    let json = serde_json::json!({"train": split.0, "val": split.1, "test": split.2});
    std::fs::write(dir.join("split.json"), json.to_string()).unwrap();
}

/// Three-community planted-partition graph with noisy class-indicative
/// features. 60 nodes, 3 classes; 5 train nodes per class, 15 val, 30 test.
pub fn write_toy_dataset(dir: &Path, seed: u64) {
    let mut r = rng(seed);
    let n = 60;
    let classes = 3;
    let labels: Vec<i64> = (0..n).map(|i| (i % classes) as i64).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if labels[u] == labels[v] { 0.25 } else { 0.02 };
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    // A ring keeps every node connected.
    for u in 0..n {
        let v = (u + classes) % n;
        if !edges.contains(&(u.min(v), u.max(v))) {
            edges.push((u.min(v), u.max(v)));
        }
    }
    let d = 8;
    let features: Rows = (0..n)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let signal = if j % classes == labels[i] as usize { 1.0 } else { 0.0 };
                    (signal + r.gen_range(0.0..1.5f64)).max(0.0)
                })
                .collect()
        })
        .collect();
    let train: Vec<usize> = (0..15).collect();
    let val: Vec<usize> = (15..30).collect();
    let test: Vec<usize> = (30..60).collect();
    write_dataset(dir, &edges, &features, &labels, (&train, &val, &test));
}
