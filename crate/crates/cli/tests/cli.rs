use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn dtqw(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtqw")).arg("--out").arg(out).args(args).output().unwrap()
}

fn ok(out: &Path, args: &[&str]) {
    let o = dtqw(out, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn header(path: &Path) -> String {
    let text = fs::read_to_string(path).unwrap();
    format!("{}\n", text.lines().next().unwrap())
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

const CYCLE4: &str = r#"{
  "walk": {"n": 2, "steps": 19, "theta": "pi/6", "phi": "pi/2", "coin": "hadamard"},
  "seed": 7
}"#;

#[test]
fn golden_headers() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", CYCLE4);
    let cfg = cfg.to_str().unwrap();
    ok(tmp.path(), &["run", "--config", cfg]);
    ok(tmp.path(), &["compare-schemes", "--config", cfg]);
    ok(tmp.path(), &["entropy", "--config", cfg]);
    ok(tmp.path(), &["metrics", "--n", "4", "--t", "1"]);
    assert_eq!(header(&tmp.path().join("walk.csv")), golden("walk_n2.header"));
    assert_eq!(header(&tmp.path().join("metrics.csv")), golden("metrics.header"));
    assert_eq!(header(&tmp.path().join("compare.csv")), golden("compare.header"));
    assert_eq!(header(&tmp.path().join("entropy.csv")), golden("entropy.header"));
}

#[test]
fn ideal_run_has_unit_fidelity() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "c.json", CYCLE4);
    ok(tmp.path(), &["run", "--config", cfg.to_str().unwrap()]);
    let r = rows(&tmp.path().join("walk.csv"));
    assert_eq!(r.len(), 20);
    for row in &r {
        let f: f64 = row[9].parse().unwrap();
        assert!((f - 1.0).abs() < 1e-12, "{row:?}");
    }
}

#[test]
fn eight_cycle_returns_home() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "c.json",
        r#"{"walk": {"n": 3, "steps": 24}, "outputs": ["distribution"]}"#,
    );
    ok(tmp.path(), &["run", "--config", cfg.to_str().unwrap()]);
    let r = rows(&tmp.path().join("walk.csv"));
    let last = &r[24];
    assert_eq!(last[0], "24");
    let p0: f64 = last[1].parse().unwrap();
    assert!((p0 - 1.0).abs() < 1e-9, "{last:?}");
    // unrequested columns stay empty
    assert!(last[17].is_empty());
}

#[test]
fn noisy_fidelity_dips_at_recurrences() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "c.json",
        r#"{"walk": {"n": 2, "steps": 16}, "noise": {"p2": 0.01}, "shots": 100000, "seed": 3,
            "outputs": ["fidelity"]}"#,
    );
    ok(tmp.path(), &["run", "--config", cfg.to_str().unwrap()]);
    let f: Vec<f64> = rows(&tmp.path().join("walk.csv")).iter().map(|r| r[9].parse().unwrap()).collect();
    for m in [4, 8, 12] {
        assert!(f[m] < f[m - 1] && f[m] < f[m + 1], "t={m}: {f:?}");
    }
    assert!(f[16] < f[15], "{f:?}");
}

#[test]
fn metrics_row_counts() {
    let tmp = TempDir::new().unwrap();
    ok(tmp.path(), &["metrics", "--n", "4", "--t", "1", "--schemes", "all"]);
    let r = rows(&tmp.path().join("metrics.csv"));
    assert_eq!(r.len(), 4);
    assert_eq!(r.iter().map(|x| x[0].as_str()).collect::<Vec<_>>(), ["present", "qft", "id-linear", "id-ancilla"]);

    ok(tmp.path(), &["metrics", "--n", "2..8", "--t", "1..20", "--schemes", "present"]);
    let r = rows(&tmp.path().join("metrics.csv"));
    assert_eq!(r.len(), 140);
    for row in &r {
        let (n, t): (u64, u64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
        assert_eq!(row[5].parse::<u64>().unwrap(), t * n + 2 * (2 * n - 1));
        assert_eq!(row[5], row[9]);
    }

    ok(tmp.path(), &["metrics", "--n", "5..3", "--t", "1", "--schemes", "present"]);
    let p = tmp.path().join("metrics.csv");
    assert!(rows(&p).is_empty());
    assert_eq!(header(&p), golden("metrics.header"));
}

#[test]
fn same_seed_same_bytes() {
    let cfg_body = r#"{"walk": {"n": 2, "steps": 6}, "noise": {"p1": 0.001, "p2": 0.01, "p_readout": 0.01},
        "shots": 20000, "seed": 11,
        "entropy_mode": {"randomized": {"n_unitaries": 20, "shots": 2000}}}"#;
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for d in [&a, &b] {
        let cfg = write_config(d.path(), "c.json", cfg_body);
        ok(d.path(), &["run", "--config", cfg.to_str().unwrap()]);
    }
    let read = |d: &TempDir| fs::read(d.path().join("walk.csv")).unwrap();
    assert_eq!(read(&a), read(&b));

    let c = TempDir::new().unwrap();
    let cfg = write_config(c.path(), "c.json", cfg_body);
    ok(c.path(), &["--seed", "12", "run", "--config", cfg.to_str().unwrap()]);
    assert_ne!(read(&a), read(&c));
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let code = |args: &[&str]| dtqw(tmp.path(), args).status.code().unwrap();

    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["metrics", "--n", "x", "--t", "1"]), 2);
    assert_eq!(code(&["metrics", "--n", "2", "--t", "1", "--schemes", "id-ancilla"]), 2);
    assert_eq!(code(&["--help"]), 0);

    let bad = write_config(tmp.path(), "bad.json", "{\n  \"walk\": {\"n\": 2, \"steps\": 3},\n  \"sedd\": 1\n}");
    let o = dtqw(tmp.path(), &["run", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.json:3"), "{err}");

    let theta = write_config(tmp.path(), "theta.json", "{\n  \"walk\": {\n    \"n\": 2,\n    \"steps\": 3,\n    \"theta\": \"4*pi\"\n  }\n}");
    let o = dtqw(tmp.path(), &["run", "--config", theta.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("theta.json:5"), "{}", String::from_utf8_lossy(&o.stderr));

    assert_eq!(code(&["run", "--config", "/nonexistent/x.json"]), 3);

    let good = write_config(tmp.path(), "good.json", CYCLE4);
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_dtqw"))
        .args(["--out", blocker.join("sub").to_str().unwrap(), "run", "--config", good.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn json_format() {
    let tmp = TempDir::new().unwrap();
    ok(tmp.path(), &["--format", "json", "metrics", "--n", "2..3", "--t", "1..2", "--schemes", "present,qft"]);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("metrics.json")).unwrap()).unwrap();
    assert_eq!(v["schema"], "metrics-v1");
    assert_eq!(v["columns"][0], "scheme");
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("metrics.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["command"], "metrics");
}
