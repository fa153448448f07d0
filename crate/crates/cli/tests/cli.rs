use std::path::PathBuf;
use std::process::{Command, Output};

fn job(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs").join(name)
}

fn levo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levo")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compute_two_planes_json() {
    let path = job("two_planes_2_2_2_2_2.json");
    let o = levo(&["compute", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"]["1"], serde_json::json!(["Z", "0", "0", "0"]));
    assert_eq!(v["lambda"]["2"], serde_json::json!(["Z^4", "Z^2", "0", "0"]));
    assert_eq!(v["status"], "certified");
    assert_eq!(v["euler"]["milnor_reduced"], -1);
}

#[test]
fn compute_text_and_seed_override() {
    let path = job("cusp.json");
    let o = levo(&["compute", "--input", path.to_str().unwrap(), "--format", "text", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(Z^2)[V(x, y)]"));
    assert!(out.contains("lambda^0 = Z^2, lambda^1 = 0"));
    assert!(out.contains("certificate: certified (d = 0)"));
}

#[test]
fn identical_runs_give_identical_json() {
    let path = job("two_planes_2_3_2_2_3.json");
    let a = levo(&["compute", "--input", path.to_str().unwrap()]);
    let b = levo(&["compute", "--input", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn genericity_failure_and_retry() {
    let path = job("bad_coordinates.json");
    let o = levo(&["compute", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = levo(&["compute", "--input", path.to_str().unwrap(), "--retry", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["retries"].as_array().is_some_and(|r| !r.is_empty()));
    assert_eq!(v["certificate"]["d"], 2);
}

#[test]
fn check_and_gecc_commands() {
    let path = job("two_planes_2_2_2_2_2.json");
    let o = levo(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["transversality"].as_array().unwrap().len(), 3);

    let o = levo(&["gecc", "--input", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(Z)[V(u, x, w2, w3)]"));
    assert!(out.contains("(Z)[V(y, z, w0, w1)]"));
}

#[test]
fn input_errors_exit_with_four() {
    let dir = std::env::temp_dir();
    let bad = dir.join("levo_cli_singular.json");
    std::fs::write(&bad, r#"{"variables":["x","y"],"constant_sheaf":true,"coordinates":{"matrix":[[1,2],[2,4]]}}"#)
        .unwrap();
    let o = levo(&["compute", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not invertible"));
    let o = levo(&["compute", "--input", "/nonexistent/job.json"]);
    assert_eq!(o.status.code(), Some(4));
}
