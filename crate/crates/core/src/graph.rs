//! Undirected weighted simple graphs and the edge-list text format.
//!
//! Edge-list files are UTF-8, one edge per line: `u<TAB>v[<TAB>weight]` with
//! 0-based node ids. The weight defaults to 1.0; lines starting with `#` and
//! blank lines are skipped.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::{csr_from_triplets, SparseMatrix};

/// How `build_graph` treats an undirected edge that appears more than once.
///
/// `(u, v)` and `(v, u)` name the same edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DuplicatePolicy {
    #[default]
    Error,
    Sum,
    KeepFirst,
}

/// Undirected weighted simple graph.
///
/// The adjacency is symmetric with a zero diagonal; self-loops only ever
/// appear in operators derived from the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adjacency: SparseMatrix,
    degrees: Vec<f64>,
}

/// Builds a graph on `n` nodes from undirected weighted edges.
pub fn build_graph(edges: &[(usize, usize, f64)], n: usize, policy: DuplicatePolicy) -> Result<Graph> {
    let mut merged: HashMap<(usize, usize), f64> = HashMap::with_capacity(edges.len());
    let mut order = Vec::with_capacity(edges.len());
    for &(u, v, w) in edges {
        if u >= n || v >= n {
            return Err(Error::Index(format!("edge ({u}, {v}) on a graph with {n} nodes")));
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Value(format!("edge ({u}, {v}) has weight {w}; weights must be > 0")));
        }
        let key = (u.min(v), u.max(v));
        match merged.get_mut(&key) {
            None => {
                merged.insert(key, w);
                order.push(key);
            }
            Some(existing) => match policy {
                DuplicatePolicy::Error => return Err(Error::DuplicateEdge(key.0, key.1)),
                DuplicatePolicy::Sum => *existing += w,
                DuplicatePolicy::KeepFirst => {}
            },
        }
    }

    let mut triplets = Vec::with_capacity(2 * order.len());
    for key in order {
        let w = merged[&key];
        triplets.push((key.0, key.1, w));
        triplets.push((key.1, key.0, w));
    }
    let adjacency = csr_from_triplets(&triplets, n, n)?;
    Ok(Graph::from_adjacency_unchecked(adjacency))
}

impl Graph {
    fn from_adjacency_unchecked(adjacency: SparseMatrix) -> Self {
        let degrees = adjacency.row_sums();
        Self { adjacency, degrees }
    }

    /// Wraps an adjacency matrix after checking every graph invariant.
    pub fn from_adjacency(adjacency: SparseMatrix) -> Result<Self> {
        let g = Self::from_adjacency_unchecked(adjacency);
        g.validate()?;
        Ok(g)
    }

    /// Checks symmetry (exact), zero diagonal, positive weights and degree consistency.
    pub fn validate(&self) -> Result<()> {
        let a = &self.adjacency;
        if !a.is_square() {
            return Err(Error::Shape("adjacency must be square".into()));
        }
        for (r, c, v) in a.triplets() {
            if r == c {
                return Err(Error::SelfLoop(r));
            }
            if v <= 0.0 {
                return Err(Error::Value(format!("edge ({r}, {c}) has weight {v}")));
            }
            if a.get(c, r) != v {
                return Err(Error::Asymmetric { row: r, col: c, diff: (v - a.get(c, r)).abs() });
            }
        }
        for (i, (&d, s)) in self.degrees.iter().zip(a.row_sums()).enumerate() {
            if d != s {
                return Err(Error::Value(format!("degree of node {i} is {d}, row sum is {s}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adjacency.n_rows()
    }

    /// Number of undirected edges.
    pub fn n_edges(&self) -> usize {
        self.adjacency.nnz() / 2
    }

    pub fn adjacency(&self) -> &SparseMatrix {
        &self.adjacency
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn isolated_nodes(&self) -> Vec<usize> {
        self.degrees.iter().enumerate().filter(|(_, &d)| d == 0.0).map(|(i, _)| i).collect()
    }

    /// Errors with `IsolatedNode` naming the first zero-degree node.
    pub fn require_no_isolated(&self) -> Result<()> {
        match self.degrees.iter().position(|&d| d == 0.0) {
            Some(i) => Err(Error::IsolatedNode(i)),
            None => Ok(()),
        }
    }

    /// Connected component id per node, ids assigned in order of first node.
    pub fn components(&self) -> Vec<usize> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in self.adjacency.row(u).0 {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn n_components(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.n_components() <= 1
    }
}

/// Parses edge-list text. `path` is only used in error messages.
pub fn parse_edge_list<R: BufRead>(reader: R, path: &Path) -> Result<Vec<(usize, usize, f64)>> {
    let mut edges = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { path: path.to_path_buf(), line: lineno + 1, msg };
        let fields: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(parse_err(format!("expected 2 or 3 tab-separated fields, found {}", fields.len())));
        }
        let u = fields[0].parse::<usize>().map_err(|e| parse_err(format!("bad node id {:?}: {e}", fields[0])))?;
        let v = fields[1].parse::<usize>().map_err(|e| parse_err(format!("bad node id {:?}: {e}", fields[1])))?;
        let w = match fields.get(2) {
            Some(s) => s.parse::<f64>().map_err(|e| parse_err(format!("bad weight {s:?}: {e}")))?,
            None => 1.0,
        };
        edges.push((u, v, w));
    }
    Ok(edges)
}

/// Reads an edge-list file.
pub fn read_edge_list(path: &Path) -> Result<Vec<(usize, usize, f64)>> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    parse_edge_list(BufReader::new(File::open(path)?), path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_degrees() {
        let g = build_graph(&[(0, 1, 1.0)], 2, DuplicatePolicy::Error).unwrap();
        assert_eq!(g.degrees(), &[1.0, 1.0]);
        g.validate().unwrap();
    }

    #[test]
    fn triangle_degrees() {
        let g = build_graph(&[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], 3, DuplicatePolicy::Error).unwrap();
        assert_eq!(g.degrees(), &[2.0, 2.0, 2.0]);
        assert_eq!(g.n_edges(), 3);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(build_graph(&[(0, 0, 1.0)], 1, DuplicatePolicy::Error), Err(Error::SelfLoop(0))));
        assert!(matches!(build_graph(&[(0, 1, 0.0)], 2, DuplicatePolicy::Error), Err(Error::Value(_))));
        assert!(matches!(build_graph(&[(0, 5, 1.0)], 2, DuplicatePolicy::Error), Err(Error::Index(_))));
    }

    #[test]
    fn duplicate_policies() {
        let edges = [(0, 1, 1.0), (1, 0, 2.0)];
        assert!(matches!(
            build_graph(&edges, 2, DuplicatePolicy::Error),
            Err(Error::DuplicateEdge(0, 1))
        ));
        let summed = build_graph(&edges, 2, DuplicatePolicy::Sum).unwrap();
        assert_eq!(summed.adjacency().get(0, 1), 3.0);
        let first = build_graph(&edges, 2, DuplicatePolicy::KeepFirst).unwrap();
        assert_eq!(first.adjacency().get(1, 0), 1.0);
    }

    #[test]
    fn isolated_and_components() {
        let g = build_graph(&[(0, 1, 1.0)], 4, DuplicatePolicy::Error).unwrap();
        assert_eq!(g.isolated_nodes(), vec![2, 3]);
        assert!(matches!(g.require_no_isolated(), Err(Error::IsolatedNode(2))));
        assert_eq!(g.n_components(), 3);
        assert!(!g.is_connected());
    }

    #[test]
    fn edge_list_parsing() {
        let text = "# header\n0\t1\n1\t2\t0.5\n\n";
        let edges = parse_edge_list(text.as_bytes(), Path::new("mem")).unwrap();
        assert_eq!(edges, vec![(0, 1, 1.0), (1, 2, 0.5)]);

        let err = parse_edge_list("0\tx\n".as_bytes(), Path::new("mem")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
