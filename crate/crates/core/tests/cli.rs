//! End-to-end runs of the command-line binary.

use std::fs;
use std::path::Path;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_rydberg-gate");

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let p = dir.join("run.toml");
    fs::write(&p, body).unwrap();
    p
}

const SMALL: &str = r#"
geometries = ["linear"]
[pulse]
tau_pi_ns = [120.0]
[numerics]
samples_per_pulse = 10
"#;

fn run(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().unwrap()
}

#[test]
fn sweep_writes_deterministic_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = run(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--jobs", "1"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["metrics.csv", "summary.txt"] {
        assert_eq!(fs::read_to_string(a.join(f)).unwrap(), fs::read_to_string(b.join(f)).unwrap(), "{f} differs");
    }
    // manifests differ only in the recorded output directory
    let manifest_without_dir = |d: &Path| {
        let text = fs::read_to_string(d.join("manifest.json")).unwrap();
        let mut m: serde_json::Value = serde_json::from_str(&text).unwrap();
        m["config"].as_object_mut().unwrap().remove("output_dir");
        m
    };
    assert_eq!(manifest_without_dir(&a), manifest_without_dir(&b));
    let metrics = fs::read_to_string(a.join("metrics.csv")).unwrap();
    let row: Vec<&str> = metrics.lines().nth(1).unwrap().split(',').collect();
    let f: f64 = row[1].parse().unwrap();
    assert!(f > 0.98 && f < 1.0, "{f}");
    assert_eq!(row[4], "linear");
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["tasks"][0]["status"], "ok");
    assert_eq!(manifest["config"]["geometries"][0], "linear");
}

#[test]
fn truth_table_rows_are_normalized() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("tt");
    let o = run(&["truth-table", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--channels", "none"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for (file, cols) in [("truth_table.csv", 9), ("truth_table_postselected.csv", 4)] {
        let text = fs::read_to_string(out.join(file)).unwrap();
        let rows: Vec<Vec<f64>> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').skip(5).map(|v| v.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 4);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-6);
            // CNOT pattern with atom A as control
            let expected = [0, 1, 3, 2][i];
            assert!(r[expected] > 0.95, "{file} row {i}: {r:?}");
        }
    }
}

#[test]
fn failed_tasks_give_nonzero_exit_and_are_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"
geometries = ["circular"]
[pulse]
tau_pi_ns = [120.0]
[trap]
temperatures_uk = [0.0, 1000.0]
[numerics]
samples_per_pulse = 10
fock_limit = 20
"#,
    );
    let out = dir.path().join("o");
    let o = run(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["tasks"][0]["status"], "ok");
    assert_eq!(manifest["tasks"][1]["status"], "failed");
    assert!(manifest["tasks"][1]["error"].as_str().unwrap().contains("1000 uK"));
    assert_eq!(fs::read_to_string(out.join("metrics.csv")).unwrap().lines().count(), 2);
}

#[test]
fn invalid_configuration_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "blockade_shift_mhz = -5.0\n");
    let o = run(&["validate-config", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("blockade_shift_mhz"));
    let o = run(&["sweep", "--channels", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_config_prints_resolved_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let o = run(&["validate-config", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let back = rydberg_gate::runner::RunConfig::from_toml(&text).unwrap();
    assert_eq!(back.pulse.tau_pi_ns, vec![120.0]);
    assert_eq!(back.blockade_shift_mhz, 50.0);
}
