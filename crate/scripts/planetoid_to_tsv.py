#!/usr/bin/env python3
"""Convert citation-network datasets into the plain-text directory layout
read by `sgc::data::load_dataset`.

Two source layouts are supported:

  planetoid  the `ind.<name>.{x,y,tx,ty,allx,ally,graph,test.index}` pickles
             with the public split (train = first len(y) nodes, val = next
             500, test = test.index).
  linqs      the original `<name>.content` / `<name>.cites` files. These carry
             no split, so one is drawn with a fixed seed: 20 nodes per class
             for training, then 500 validation and 1000 test nodes.

Output directory contents:

  edges.tsv     u<TAB>v, 0-based, one line per citation record (reciprocal
                citations are kept as separate records)
  features.tsv  node<TAB>idx:val idx:val ...   (sparse form)
  labels.tsv    node<TAB>class                 (unlabeled nodes omitted)
  split.json    {"train": [...], "val": [...], "test": [...]}

Usage:
  planetoid_to_tsv.py planetoid <src_dir> <name> <out_dir>
  planetoid_to_tsv.py linqs <src_dir> <name> <out_dir> [--seed N]
"""
import argparse
import json
import os
import pickle
import sys

import numpy as np
import scipy.sparse as sp


def _load_pickle(path):
    with open(path, "rb") as f:
        if sys.version_info > (3, 0):
            return pickle.load(f, encoding="latin1")
        return pickle.load(f)


def convert_planetoid(src, name):
    objs = {k: _load_pickle(os.path.join(src, f"ind.{name}.{k}"))
            for k in ["x", "y", "tx", "ty", "allx", "ally", "graph"]}
    with open(os.path.join(src, f"ind.{name}.test.index")) as f:
        test_idx = [int(line) for line in f if line.strip()]
    test_sorted = np.sort(test_idx)

    tx, ty = objs["tx"], objs["ty"]
    if name == "citeseer":
        # Some test ids have no feature row; pad them as featureless, unlabeled nodes.
        full = range(test_sorted.min(), test_sorted.max() + 1)
        tx_ext = sp.lil_matrix((len(full), tx.shape[1]))
        tx_ext[test_sorted - test_sorted.min(), :] = tx
        tx = tx_ext
        ty_ext = np.zeros((len(full), ty.shape[1]))
        ty_ext[test_sorted - test_sorted.min(), :] = ty
        ty = ty_ext

    features = sp.vstack((objs["allx"], tx)).tolil()
    features[test_idx, :] = features[test_sorted, :]
    onehot = np.vstack((objs["ally"], ty))
    onehot[test_idx, :] = onehot[test_sorted, :]
    labels = np.where(onehot.sum(axis=1) > 0, onehot.argmax(axis=1), -1)

    n = features.shape[0]
    edges = []
    for u, nbrs in objs["graph"].items():
        for v in nbrs:
            if u != v and u < n and v < n:
                edges.append((u, v))
    # The adjacency lists store both directions; keep one record per direction pair.
    seen = set()
    records = []
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        records.append(key)

    n_train = objs["y"].shape[0]
    split = {
        "train": list(range(n_train)),
        "val": list(range(n_train, n_train + 500)),
        "test": [int(i) for i in test_sorted],
    }
    return features.tocsr(), labels, records, split


def convert_linqs(src, name, seed):
    ids, rows, classes = [], [], []
    with open(os.path.join(src, f"{name}.content")) as f:
        for line in f:
            parts = line.rstrip("\n").split("\t")
            ids.append(parts[0])
            rows.append([float(v) for v in parts[1:-1]])
            classes.append(parts[-1])
    index = {pid: i for i, pid in enumerate(ids)}
    class_names = sorted(set(classes))
    labels = np.array([class_names.index(c) for c in classes])
    features = sp.csr_matrix(np.array(rows))

    records = []
    with open(os.path.join(src, f"{name}.cites")) as f:
        for line in f:
            a, b = line.split()
            if a in index and b in index and a != b:
                records.append((index[b], index[a]))

    rng = np.random.default_rng(seed)
    perm = rng.permutation(len(ids))
    train, counts = [], {c: 0 for c in range(len(class_names))}
    for i in perm:
        if counts[labels[i]] < 20:
            counts[labels[i]] += 1
            train.append(int(i))
    rest = [int(i) for i in perm if int(i) not in set(train)]
    split = {"train": sorted(train), "val": sorted(rest[:500]), "test": sorted(rest[500:1500])}
    return features, labels, records, split


def _fmt(v):
    # Source features are single precision; print the shortest round-tripping form.
    return np.format_float_positional(np.float32(v), trim="-")


def write(out, features, labels, records, split):
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, "edges.tsv"), "w") as f:
        f.write("# u\tv\n")
        for u, v in records:
            f.write(f"{u}\t{v}\n")
    features = sp.csr_matrix(features)
    with open(os.path.join(out, "features.tsv"), "w") as f:
        for i in range(features.shape[0]):
            lo, hi = features.indptr[i], features.indptr[i + 1]
            cols = features.indices[lo:hi]
            vals = features.data[lo:hi]
            order = np.argsort(cols)
            entries = " ".join(f"{int(c)}:{_fmt(v)}" for c, v in zip(cols[order], vals[order]) if v != 0)
            f.write(f"{i}\t{entries}\n")
    with open(os.path.join(out, "labels.tsv"), "w") as f:
        for i, y in enumerate(labels):
            if y >= 0:
                f.write(f"{i}\t{int(y)}\n")
    with open(os.path.join(out, "split.json"), "w") as f:
        json.dump(split, f)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("layout", choices=["planetoid", "linqs"])
    p.add_argument("src")
    p.add_argument("name")
    p.add_argument("out")
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    if a.layout == "planetoid":
        parts = convert_planetoid(a.src, a.name)
    else:
        parts = convert_linqs(a.src, a.name, a.seed)
    write(a.out, *parts)


if __name__ == "__main__":
    main()
