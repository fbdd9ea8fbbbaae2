//! The `essalg` binary end to end.

use std::process::{Command, Output};

fn essalg(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_essalg"));
    cmd.arg("--cache-dir").arg(dir.path()).args(args);
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn catalog_listing() {
    let o = essalg(&["catalog", "--max-order", "1", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = essalg(&["catalog", "--max-order", "8", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 15);
    assert!(stdout(&o).contains("C2^3,8,true,168,8,8"));
    assert_eq!(essalg(&["catalog", "--max-order", "16"]).status.code(), Some(2));
}

#[test]
fn essential_rows() {
    let o = essalg(&["essential", "--functor", "burnside", "--group", "C2", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("burnside,C2,5,4,1,0,1,false,"));
    let o = essalg(&["essential", "--functor", "classfun:rational", "--group", "C6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"][0]["report"]["vanished"], true);
    let o = essalg(&["essential", "--functor", "classfun:ordinary", "--group", "S3", "--format", "csv"]);
    assert!(stdout(&o).contains(",true,"));
    // Burnside at C13 needs the lattice of C13 x C13, past the default bound
    let o = essalg(&["essential", "--functor", "burnside", "--group", "C13", "--cap", "13", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("exceeds the configured bound"));
}

#[test]
fn shift_reports() {
    let o = essalg(&["shift", "--functor", "classfun:rational", "--shift-group", "C3", "--max-order", "5", "--nu", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["splitOk"] == true));
    assert_eq!(v["nu"][0]["report"]["rationalClasses"], 2);
    let o = essalg(&["shift", "--functor", "burnside", "--shift-group", "1", "--max-order", "4", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",0,true,true")));
}

#[test]
fn verify_usage() {
    assert_eq!(essalg(&["verify", "nonsense"]).status.code(), Some(2));
    assert!(essalg(&["verify", "shift"]).status.success());
}

#[test]
fn cache_agrees_with_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_essalg"));
        cmd.arg("--cache-dir").arg(dir.path()).args(["essential", "--functor", "burnside", "--max-order", "4", "--format", "csv"]);
        cmd.args(extra).output().unwrap()
    };
    let first = run(&[]);
    let second = run(&[]);
    let checked = run(&["--check-cache"]);
    let uncached = run(&["--no-cache"]);
    assert!(checked.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(stdout(&first), stdout(&checked));
    assert_eq!(stdout(&first), stdout(&uncached));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 5);
}
