use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::graph::{build_graph, read_edge_list, DuplicatePolicy, Graph};

/// A transductive node-classification dataset.
#[derive(Debug, Clone)]
pub struct DatasetBundle {
    pub graph: Graph,
    pub features: DenseMatrix,
    /// Class per node, `-1` for unlabeled nodes.
    pub labels: Vec<i64>,
    pub n_classes: usize,
    pub train_mask: Vec<usize>,
    pub val_mask: Vec<usize>,
    pub test_mask: Vec<usize>,
    /// Number of edge records in the source file, before duplicate merging.
    pub edge_records: usize,
}

impl DatasetBundle {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.graph.n();
        if self.features.n_rows() != n || self.labels.len() != n {
            return Err(Error::Shape(format!(
                "graph has {n} nodes, features {} rows, labels {}",
                self.features.n_rows(),
                self.labels.len()
            )));
        }
        if !self.features.all_finite() {
            return Err(Error::Value("non-finite feature value".into()));
        }
        if let Some(&y) = self.labels.iter().find(|&&y| y < -1 || y >= self.n_classes as i64) {
            return Err(Error::Index(format!("label {y} with {} classes", self.n_classes)));
        }
        let mut seen = HashSet::new();
        for (name, mask) in [("train", &self.train_mask), ("val", &self.val_mask), ("test", &self.test_mask)] {
            for &i in mask {
                if i >= n {
                    return Err(Error::Index(format!("{name} node {i} of {n}")));
                }
                if !seen.insert(i) {
                    return Err(Error::Split(format!("node {i} appears twice across masks (in {name})")));
                }
                if self.labels[i] < 0 {
                    return Err(Error::Split(format!("{name} node {i} is unlabeled")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitFile {
    train: Vec<usize>,
    val: Vec<usize>,
    test: Vec<usize>,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    Ok(BufReader::new(File::open(path)?))
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { path: path.to_path_buf(), line, msg: msg.into() }
}

/// Node id, source line and `(column, value)` entries of one feature row.
type FeatureRow = (usize, usize, Vec<(usize, f64)>);

/// Reads `features.tsv`. Node ids must cover `0..n` exactly once; the
/// feature dimension is the largest index (sparse) or row width (dense).
pub fn read_features(path: &Path) -> Result<DenseMatrix> {
    let mut rows: Vec<FeatureRow> = Vec::new();
    let mut sparse = None;
    for (idx, line) in open(path)?.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.trim_end_matches(['\n', '\r']).split('\t');
        let id_str = fields.next().unwrap_or_default().trim();
        let id = id_str
            .parse::<usize>()
            .map_err(|e| parse_err(path, lineno, format!("bad node id {id_str:?}: {e}")))?;
        let rest: Vec<&str> = fields.collect();
        let is_sparse = *sparse.get_or_insert_with(|| line.contains(':') || rest.iter().all(|f| f.trim().is_empty()));
        let mut entries = Vec::new();
        if is_sparse {
            for tok in rest.iter().flat_map(|f| f.split_whitespace()) {
                let (c, v) = tok
                    .split_once(':')
                    .ok_or_else(|| parse_err(path, lineno, format!("expected idx:val, got {tok:?}")))?;
                let c = c.parse::<usize>().map_err(|e| parse_err(path, lineno, format!("bad index {c:?}: {e}")))?;
                let v = v.parse::<f64>().map_err(|e| parse_err(path, lineno, format!("bad value {v:?}: {e}")))?;
                entries.push((c, v));
            }
        } else {
            for (c, tok) in rest.iter().enumerate() {
                let v = tok.trim().parse::<f64>().map_err(|e| parse_err(path, lineno, format!("bad value {tok:?}: {e}")))?;
                entries.push((c, v));
            }
        }
        if let Some(&(_, v)) = entries.iter().find(|(_, v)| !v.is_finite()) {
            return Err(parse_err(path, lineno, format!("non-finite value {v}")));
        }
        rows.push((id, lineno, entries));
    }

    let n = rows.len();
    let d = rows.iter().flat_map(|(_, _, e)| e.iter().map(|(c, _)| c + 1)).max().unwrap_or(0);
    let mut x = DenseMatrix::zeros(n, d);
    let mut seen = vec![false; n];
    for (id, lineno, entries) in rows {
        if id >= n {
            return Err(parse_err(path, lineno, format!("node id {id} but only {n} feature rows")));
        }
        if std::mem::replace(&mut seen[id], true) {
            return Err(parse_err(path, lineno, format!("duplicate feature row for node {id}")));
        }
        let row = x.row_mut(id);
        for (c, v) in entries {
            row[c] += v;
        }
    }
    Ok(x)
}

/// Reads `labels.tsv` into a length-`n` array with `-1` for absent nodes.
pub fn read_labels(path: &Path, n: usize) -> Result<Vec<i64>> {
    let mut labels = vec![-1i64; n];
    for (idx, line) in open(path)?.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(parse_err(path, lineno, format!("expected 2 fields, found {}", fields.len())));
        }
        let id = fields[0]
            .parse::<usize>()
            .map_err(|e| parse_err(path, lineno, format!("bad node id {:?}: {e}", fields[0])))?;
        let class = fields[1]
            .parse::<i64>()
            .map_err(|e| parse_err(path, lineno, format!("bad class {:?}: {e}", fields[1])))?;
        if id >= n {
            return Err(Error::Index(format!("labeled node {id} with {n} nodes")));
        }
        if class < 0 {
            return Err(parse_err(path, lineno, format!("negative class {class}")));
        }
        labels[id] = class;
    }
    Ok(labels)
}

fn read_split(path: &Path) -> Result<SplitFile> {
    let split: SplitFile = serde_json::from_reader(open(path)?).map_err(|e| parse_err(path, e.line(), e.to_string()))?;
    Ok(split)
}

/// Loads `edges.tsv`, `features.tsv`, `labels.tsv` and `split.json` from `dir`.
///
/// Repeated undirected edges keep their first weight.
pub fn load_dataset(dir: &Path) -> Result<DatasetBundle> {
    let file = |name: &str| -> PathBuf { dir.join(name) };
    let features = read_features(&file("features.tsv"))?;
    let n = features.n_rows();
    let edges = read_edge_list(&file("edges.tsv"))?;
    let graph = build_graph(&edges, n, DuplicatePolicy::KeepFirst)?;
    let labels = read_labels(&file("labels.tsv"), n)?;
    let split = read_split(&file("split.json"))?;
    let n_classes = labels.iter().copied().max().map_or(0, |m| (m + 1).max(0) as usize);

    let bundle = DatasetBundle {
        graph,
        features,
        labels,
        n_classes,
        train_mask: split.train,
        val_mask: split.val,
        test_mask: split.test,
        edge_records: edges.len(),
    };
    bundle.validate()?;
    Ok(bundle)
}
