use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn gausslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gausslab")).args(args).env_remove("GAUSSLAB_CAP").output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exeasy_gauss_sum() {
    let out = gausslab(&["gauss-sum", "--input", fixture("exeasy_z2").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["tau"], serde_json::json!({"order": 4, "coeffs": [["1", "1"], ["1", "1"]]}));
}

#[test]
fn zeta_on_vdgv() {
    let out = gausslab(&["zeta", "--input", fixture("vdgv_f2").to_str().unwrap(), "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["certificate"]["m"], 2);
}

#[test]
fn toml_input() {
    let dir = std::env::temp_dir().join("gausslab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f9.toml");
    std::fs::write(&path, "p = 3\nm = 2\n").unwrap();
    let out = gausslab(&["field", "--input", path.to_str().unwrap(), "--ext", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("section,key,value\n"));
    assert!(text.contains("result,q,9"));
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join("gausslab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"p\": 2,").unwrap();
    let out = gausslab(&["field", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(gausslab(&["field", "--input", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(gausslab(&["zeta"]).status.code(), Some(2));

    let big = dir.join("big.json");
    std::fs::write(&big, r#"{"p": 2, "m": 12}"#).unwrap();
    let capped = Command::new(env!("CARGO_BIN_EXE_gausslab"))
        .args(["field", "--input", big.to_str().unwrap()])
        .env("GAUSSLAB_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let lifted = Command::new(env!("CARGO_BIN_EXE_gausslab"))
        .args(["field", "--input", big.to_str().unwrap(), "--cap-override"])
        .env("GAUSSLAB_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(lifted.status.code(), Some(0));
}

#[test]
fn suite_is_green_and_worker_independent() {
    let strip = |o: &Output| {
        let mut v = json(o);
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let one = gausslab(&["suite", "--workers", "1"]);
    let four = gausslab(&["suite", "--workers", "4", "--seed", "0"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(strip(&one), strip(&four));
    let other_seed = gausslab(&["suite", "--seed", "7"]);
    assert_eq!(other_seed.status.code(), Some(0));
}
