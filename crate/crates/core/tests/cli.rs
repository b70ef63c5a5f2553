use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn asmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asmt"))
        .args(args)
        .env_remove("ASMT_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn density_prints_the_fraction() {
    let o = asmt(&["density", "--jobs", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("5551/46656"));
    let v = json_out(&asmt(&["density", "--format", "json"]));
    assert_eq!(v["count2"], 624);
    assert_eq!(v["count3"], 69174);
}

#[test]
fn weyl_commands() {
    let o = asmt(&["weyl", "kappa", "--lambda", "1,1,-2"]);
    assert_eq!(
        stdout(&o),
        "^0w = id: (2,2;2)\n^1w = s_b: (2,2;2)\n^2w = s_b s_a: (1,1;2)\n^3w = s_b s_a s_b: (1,1;2)\n"
    );
    let o = asmt(&["weyl", "slopes", "--nu", "(1,1;-2)", "--w", "id"]);
    assert!(o.status.success());
    let v = json_out(&asmt(&["weyl", "slopes", "--nu", "1,1,-2", "--w", "bab", "--format", "json"]));
    assert_eq!(v["schema"], 1);
    assert!(v["bound"].is_object());
    // parity violation is a domain error on stderr with exit code 1
    let o = asmt(&["weyl", "kappa", "--lambda", "1,1,-1"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn figure1_outputs() {
    let o = asmt(&["figure1"]);
    let text = stdout(&o);
    assert!(text.starts_with("kind,x,y,label\n"));
    assert!(text.contains("kappa,2,2,^0w"));
    let v = json_out(&asmt(&["figure1", "--lambda", "0,-2,-2", "--format", "json"]));
    let squares: Vec<(i64, i64)> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["kind"] == "kappa")
        .map(|r| (r["x"].as_i64().unwrap(), r["y"].as_i64().unwrap()))
        .collect();
    assert_eq!(squares.len(), 4);
}

#[test]
fn check_and_lemma23() {
    let v = json_out(&asmt(&["check", "--curve", "f=[1,-1,0,0,0,1];h=[1]", "--prime-bound", "100"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["conditions"].as_array().unwrap().len(), 4);
    let o = asmt(&["check", "--curve", "f=[1,-1,0,0,0,1];h=[1]", "--format", "text"]);
    assert!(stdout(&o).contains("overall:"));
    let v = json_out(&asmt(&["lemma23", "--curve", "f=[1,-1,0,0,0,1];h=[]"]));
    assert_eq!(v["conditions"].as_array().unwrap().len(), 4);
}

#[test]
fn errors_have_kinds_and_exit_codes() {
    let o = asmt(&["check", "--curve", "f=[1,0,1];h=[]"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "NotGenusTwo");

    let o = asmt(&["check", "--curve", "not a curve"]);
    assert_eq!(o.status.code(), Some(2));
    let o = asmt(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_twists() {
    let v = json_out(&asmt(&[
        "compare",
        "--a",
        "f=[1,-1,0,0,0,1];h=[]",
        "--b",
        "f=[-1,1,0,0,0,-1];h=[]",
        "--bound",
        "60",
    ]));
    assert_eq!(v["agree_up_to_bound"], false);
    assert_eq!(v["two_distinguished"], "Unknown");
}

#[test]
fn lmfdb_ingest_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let input = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/synthetic_genus2.jsonl");
    let args = |extra: &[&str]| {
        let mut a = vec![
            "lmfdb".to_string(),
            "ingest".into(),
            "--input".into(),
            input.to_string_lossy().into(),
            "--cache".into(),
            cache.to_string_lossy().into(),
            "--prime-bound".into(),
            "60".into(),
        ];
        a.extend(extra.iter().map(|s| s.to_string()));
        a
    };
    let run = |a: Vec<String>| {
        let refs: Vec<&str> = a.iter().map(|s| s.as_str()).collect();
        json_out(&asmt(&refs))
    };
    let first = run(args(&["--jobs", "4"]));
    assert_eq!(first["records"], 100);
    assert_eq!(first["computed"], 100);
    let second = run(args(&[]));
    assert_eq!(second["reused"], 100);
    assert_eq!(second["computed"], 0);

    let rep = json_out(&asmt(&["lmfdb", "report", "--cache", &cache.to_string_lossy()]));
    assert_eq!(rep["records"], 100);
    assert_eq!(rep["end_z"], 85);
    assert_eq!(rep["snapshots"][0], first["snapshot"]);

    let o = Command::new(env!("CARGO_BIN_EXE_asmt"))
        .args(["lmfdb", "report", "--format", "text"])
        .env("ASMT_CACHE", &cache)
        .output()
        .unwrap();
    assert!(stdout(&o).contains("End = Z: 85"));
}

#[test]
fn closed_stdout_is_not_an_error() {
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_asmt"))
        .args(["figure1", "--format", "json"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    drop(child.stdout.take());
    let o = child.wait_with_output().unwrap();
    assert!(!String::from_utf8_lossy(&o.stderr).contains("panicked"));
}
