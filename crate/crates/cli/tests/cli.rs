//! End-to-end tests of the `phflag` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn phflag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phflag"))
        .args(args)
        .env_remove("PHFLAG_SUITE")
        .env_remove("PHFLAG_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("phflag-cli-{}-{name}", std::process::id()))
}

#[test]
fn default_verify_passes_with_many_checks() {
    let o = phflag(&["verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "all");
    let cases = v["cases"].as_array().unwrap();
    assert!(cases.len() > 40, "{} checks", cases.len());
    for c in cases {
        assert_eq!(c["pass"], true, "{c}");
        assert!(!c["anchor"].as_str().unwrap().is_empty());
    }
    let ids: Vec<&str> = cases.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["verify", "--suite", "dynamics", "--seed", "11", "--samples", "20", "--format", "json"];
    assert_eq!(phflag(&args).stdout, phflag(&args).stdout);
}

#[test]
fn corrupted_fixture_fails_with_case_id() {
    let path = temp_path("fixtures.json");
    std::fs::write(&path, r#"{"classification_oracle.isotropy.t": "diag[3a, -3a, 1]"}"#).unwrap();
    let o = phflag(&[
        "verify",
        "--suite",
        "classification_oracle",
        "--samples",
        "5",
        "--fixtures",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("classification_oracle.isotropy.t"));
}

#[test]
fn correct_fixture_passes() {
    let path = temp_path("good.json");
    std::fs::write(&path, r#"{"classification_oracle.isotropy.a": "diag[2a+b, -a-2b, a-b]"}"#).unwrap();
    let o = phflag(&["verify", "--suite", "classification_oracle", "--samples", "5", "--fixtures", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(phflag(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(phflag(&["verify", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(phflag(&["verify", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(phflag(&["oracle", "degeneration-t9"]).status.code(), Some(2));
    assert_eq!(phflag(&["lyapunov", "--matrix", "2,0,0,1"]).status.code(), Some(2));
    assert_eq!(phflag(&["lyapunov", "--matrix", "2,1.5,1,1"]).status.code(), Some(2));
    assert_eq!(phflag(&["simulate", "--matrix", "2,1,1,1", "--translation", "1/3,0,0"]).status.code(), Some(2));
}

#[test]
fn environment_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_phflag"))
        .args(["verify"])
        .env("PHFLAG_SUITE", "nope")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_degeneration_prints_matrix_and_limit() {
    let o = phflag(&["oracle", "degeneration-t1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("matrix: [[1, -2, -20], [1, -2, -20], [-1/10, 1/10, 1]]"), "{s}");
    assert!(s.contains("limit: R e_beta"), "{s}");
}

#[test]
fn oracle_isotropy_table() {
    let o = phflag(&["oracle", "isotropy-a", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("diag[2a+b, -a-2b, a-b]"));
}

#[test]
fn lyapunov_cat_map() {
    let o = phflag(&["lyapunov", "--matrix", "2,1,1,1", "-n", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let u = v["measured"]["unstable"].as_f64().unwrap();
    assert!((u - 0.9624).abs() <= 1e-3, "{u}");
    assert_eq!(v["certified_n"], 1);
}

#[test]
fn simulate_identity_is_constant() {
    let o = phflag(&["simulate", "--matrix", "1,0,0,1", "-n", "5", "--start", "0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("step,x,y,z"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    for (k, row) in rows.iter().enumerate() {
        let rest = row.split_once(',').unwrap();
        assert_eq!(rest.0, k.to_string());
        assert_eq!(rest.1, rows[0].split_once(',').unwrap().1);
    }
}

#[test]
fn simulate_writes_file() {
    let path = temp_path("orbit.csv");
    let o = phflag(&["simulate", "--matrix", "2,1,1,1", "-n", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().count(), 12);
    for row in text.lines().skip(1) {
        let vals: Vec<f64> = row.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
        assert!(vals[0] >= 0.0 && vals[0] < 1.0 && vals[1] >= 0.0 && vals[1] < 1.0 && vals[2] >= 0.0 && vals[2] < 0.5);
    }
}
