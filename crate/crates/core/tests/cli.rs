mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::{write_dataset, write_toy_dataset};

fn sgc(args: &[&str], config: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgc"))
        .args(args)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .env("SGC_THREADS", "2")
        .output()
        .unwrap()
}

fn write_config(dir: &Path, body: serde_json::Value) -> PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

fn toy(dir: &Path) -> PathBuf {
    let data = dir.join("toy");
    write_toy_dataset(&data, 4);
    data
}

#[test]
fn run_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let data = toy(dir.path());
    let config = write_config(
        dir.path(),
        serde_json::json!({
            "dataset_dir": data,
            "propagation": {"kind": "aug_norm_adj", "gamma": 1.0, "K": 2},
            "sweep": [1e-4, 1e-2],
        }),
    );
    let out = dir.path().join("run");
    let o = sgc(&["run"], &config, &out);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("test_acc="));
    assert!(out.join("result.json").exists() && out.join("model.bin").exists());

    let out = dir.path().join("sweep");
    let o = sgc(&["sweep"], &config, &out);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(out.join("sweep.csv")).unwrap().lines().count(), 3);
}

#[test]
fn analysis_verbs_write_their_files() {
    let dir = tempfile::tempdir().unwrap();
    let data = toy(dir.path());
    let config = write_config(
        dir.path(),
        serde_json::json!({
            "dataset_dir": data,
            "propagation": {"kind": "aug_norm_adj", "K": 2},
            "sweep": [1e-3],
            "ablation": {"kinds": ["rw", "aug_rw"], "K_values": [1, 2], "per_class": [1, 2], "repeats": 2},
            "spectrum": {"curve_points": 11},
            "bench": {"warmup": 0, "trials": 1},
        }),
    );
    let cases: [(&str, &[&str]); 4] = [
        ("ablate-prop", &["ablation.csv"]),
        ("ablate-data", &["data_amount.csv"]),
        (
            "spectrum",
            &["spectrum.csv", "spectrum.json", "fourier.csv", "filter_curve_aug_norm_adj_K2.csv"],
        ),
        ("bench", &["bench.json"]),
    ];
    for (verb, files) in cases {
        let out = dir.path().join(verb);
        let o = sgc(&[verb], &config, &out);
        assert_eq!(o.status.code(), Some(0), "{verb}: {}", String::from_utf8_lossy(&o.stderr));
        for f in files {
            assert!(out.join(f).exists(), "{verb} missing {f}");
        }
    }
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = sgc(&["run"], &dir.path().join("absent.json"), &out);
    assert_eq!(o.status.code(), Some(2));

    let config = write_config(dir.path(), serde_json::json!({"dataset_dir": "x", "propagation": {"kind": "bogus", "K": 1}}));
    assert_eq!(sgc(&["run"], &config, &out).status.code(), Some(2));

    let config = write_config(
        dir.path(),
        serde_json::json!({"dataset_dir": "x", "propagation": {"kind": "rw", "K": 1}, "unknown": true}),
    );
    let o = sgc(&["sweep"], &config, &out);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown"));
    assert!(!out.exists());
}

#[test]
fn data_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        serde_json::json!({"dataset_dir": dir.path().join("nowhere"), "propagation": {"kind": "rw", "K": 1}}),
    );
    assert_eq!(sgc(&["run"], &config, &dir.path().join("out")).status.code(), Some(3));

    let data = dir.path().join("broken");
    write_dataset(&data, &[(0, 1)], &vec![vec![1.0], vec![2.0]], &[0, 1], (&[0], &[0], &[1]));
    let config = write_config(dir.path(), serde_json::json!({"dataset_dir": data, "propagation": {"kind": "rw", "K": 1}}));
    assert_eq!(sgc(&["run"], &config, &dir.path().join("out")).status.code(), Some(3));
}

#[test]
fn numerical_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("isolated");
    write_dataset(&data, &[(0, 1)], &vec![vec![1.0], vec![2.0], vec![3.0]], &[0, 1, 0], (&[0, 1], &[], &[2]));
    let config = write_config(dir.path(), serde_json::json!({"dataset_dir": data, "propagation": {"kind": "norm_adj", "K": 2}}));
    let o = sgc(&["run"], &config, &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let data = toy(dir.path());
    let config = write_config(dir.path(), serde_json::json!({"dataset_dir": data, "propagation": {"kind": "aug_norm_adj", "K": 3}}));
    let mut results = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("t{threads}"));
        let o = Command::new(env!("CARGO_BIN_EXE_sgc"))
            .args(["run", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&out)
            .env("SGC_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        let mut r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("result.json")).unwrap()).unwrap();
        r["precompute_seconds"] = 0.into();
        r["train_seconds"] = 0.into();
        results.push((r, std::fs::read(out.join("model.bin")).unwrap()));
    }
    assert_eq!(results[0], results[1]);
}
