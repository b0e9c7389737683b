use std::fs;
use std::process::{Command, Output};

fn rvm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rvm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn table1_has_ten_rows() {
    let o = rvm(&["constants", "table1"]);
    assert!(o.status.success());
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 10);
    for r in rows {
        let ratio: f64 = r[6].parse().unwrap();
        assert!(ratio > 0.9 && ratio < 1.1, "{r:?}");
    }
}

#[test]
fn crossovers_are_three_increasing_heights() {
    let o = rvm(&["zeta", "crossovers"]);
    assert!(o.status.success());
    let t: Vec<f64> = data_rows(&stdout(&o)).iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(t.len(), 3);
    assert!(t[0] < t[1] && t[1] < t[2]);
}

#[test]
fn gap_scan_is_positive_and_flags_admissibility() {
    let o = rvm(&["gaps", "scan", "--mu", "0.0113", "--from-logx", "1000", "--to-logx", "4000", "--step", "250"]);
    assert!(o.status.success());
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() > 0.0));
    assert_eq!(rows[0][5], "false");
    assert_eq!(rows.last().unwrap()[5], "true");
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside"));
}

#[test]
fn enforced_admissibility_rejects_early_points() {
    let o = rvm(&["gaps", "scan", "--mu", "0.0113", "--from-logx", "1000", "--to-logx", "1100", "--step", "50", "--enforce-admissibility"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(rvm(&["--no-such-flag"]).status.code(), Some(1));
    assert_eq!(rvm(&["gaps", "scan", "--mu", "0.0113", "--from-logx", "1000", "--to-logx", "2000"]).status.code(), Some(1));
    assert_eq!(rvm(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "not a config line\n").unwrap();
    let o = rvm(&["--zeta-config", bad.to_str().unwrap(), "zeta", "crossovers"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    let o = rvm(&["--k-table", dir.path().join("missing").to_str().unwrap(), "constants", "table1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn manifest_records_checksums() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let o = rvm(&["--out", out.to_str().unwrap(), "weights"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let csv = fs::read_to_string(&out).unwrap();
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("w.csv.manifest.json")).unwrap()).unwrap();
    let output = &manifest["outputs"][0];
    assert_eq!(output["bytes"].as_u64().unwrap() as usize, csv.len());
    let sha = output["sha256"].as_str().unwrap();
    assert_eq!(sha.len(), 64);
    assert_eq!(manifest["command_line"][1], "--out");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["zeta", "nu", "--log-t", "10,50,200,1e6"];
    let a = rvm(&args);
    let b = rvm(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn power_witnesses_for_small_n() {
    let o = rvm(&["empirical", "powers", "--m", "90", "--n-from", "1", "--n-to", "5"]);
    assert!(o.status.success());
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(), ["1", "2", "3", "4", "5"]);
    assert_eq!(rows[1][1], "133");
}

#[test]
fn residual_uses_and_refreshes_sieve_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("sieve.bin");
    let args = ["--sieve-cache", cache.to_str().unwrap(), "empirical", "residual", "--x", "20000", "--t", "100", "--steps", "4"];
    let first = rvm(&args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert!(cache.exists());
    let second = rvm(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&second.stderr).contains("desk-scale"));
}

#[test]
fn lambda_optimum_is_not_worse() {
    let o = rvm(&["constants", "m", "--log-x-m", "40", "--alpha", "0.5", "--omega", "0", "--lambda", "0.43", "--optimize", "1e-5,1"]);
    assert!(o.status.success());
    let r = &data_rows(&stdout(&o))[0];
    let (m, m_opt): (f64, f64) = (r[5].parse().unwrap(), r[11].parse().unwrap());
    assert!(m_opt <= m, "{r:?}");
    assert_eq!(rvm(&["constants", "table1", "--optimize", "1e-5"]).status.code(), Some(1));
}
