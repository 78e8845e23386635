use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcc")).args(args).env_remove("QC_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn cubic_file(dir: &Path) -> String {
    let c1 = write(dir, "c1.mat", "2 1 2\n(1) (1)\n");
    let c2 = write(dir, "c2.mat", "2 2 2\n(1,0) (0,1)\n");
    let out = dir.join("cubic.qc").to_str().unwrap().to_string();
    let o = qcc(&["construct", "cubic", "--c1", &c1, "--c2", &c2, "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn factor_lists_cosets() {
    let o = qcc(&["factor", "-q", "2", "-m", "7", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cosets: Vec<Value> = v["factors"].as_array().unwrap().iter().map(|f| f["coset"].clone()).collect();
    assert_eq!(cosets, vec![serde_json::json!([0]), serde_json::json!([1, 2, 4]), serde_json::json!([3, 6, 5])]);
    assert_eq!(v["pairs"], 1);
}

#[test]
fn cubic_example_is_self_dual() {
    let dir = tempfile::tempdir().unwrap();
    let file = cubic_file(dir.path());
    assert_eq!(qcc(&["check", "--file", &file, "--self-dual"]).status.code(), Some(0));
    let lcd = qcc(&["check", "--file", &file, "--lcd", "--json"]);
    assert_eq!(lcd.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&lcd)).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["index"], 0);
}

#[test]
fn written_files_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let file = cubic_file(dir.path());
    let text = fs::read_to_string(&file).unwrap();
    let code = qccodes::io::parse_qc(&text).unwrap();
    assert_eq!(qccodes::io::format_qc(&code), text);
    let o = qcc(&["decompose", "--file", &file]);
    let out = stdout(&o);
    assert!(out.contains("factor=1,1 u=0 field=GF(2^1) dim=1"), "{out}");
    assert!(out.contains("factor=1,1,1 u=1 field=GF(2^2) dim=1"), "{out}");
    let dist = qcc(&["distance", "--file", &file]);
    assert_eq!(stdout(&dist).trim(), "[6, 3, 2]");
}

#[test]
fn hamming_bounds_json() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "ham.qc", "# cyclic Hamming code\n2 7 1\n1,1,0,1\n");
    let o = qcc(&["bounds", "--file", &file, "--exact", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bounds"]["spectral_bch"]["value"], 3);
    assert_eq!(v["exact"], 3);
    assert_eq!(v["length"], 7);
}

#[test]
fn budget_is_reported_distinctly() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "ham.qc", "2 7 1\n1,1,0,1\n");
    let o = qcc(&["distance", "--file", &file, "--budget", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("budget exceeded"));
    let env = Command::new(env!("CARGO_BIN_EXE_qcc")).args(["distance", "--file", &file]).env("QC_BUDGET", "2").output().unwrap();
    assert_eq!(env.status.code(), Some(3));
    let ok = Command::new(env!("CARGO_BIN_EXE_qcc"))
        .args(["distance", "--file", &file, "--budget", "100"])
        .env("QC_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&ok).trim(), "[7, 4, 3]");
}

#[test]
fn malformed_input_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bad.qc", "2 7 1\n1,2\n");
    let o = qcc(&["groebner", "--file", &file]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 3"));
    assert_eq!(qcc(&["groebner", "--file", "/nonexistent/x.qc"]).status.code(), Some(2));
    assert_eq!(qcc(&["check", "--file", &file]).status.code(), Some(2));
    assert_eq!(qcc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn convolutional_bound_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "classic.cv", "2 2\n1,0,1;1,1,1\n");
    let o = qcc(&["conv-bound", "--gen", &file, "--m", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["bound"].clone(), v["search"].clone()), (Value::from(2), Value::from(5)));
}

#[test]
fn asymptotics_report() {
    let o = qcc(&["asymptotics", "--ell", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d_selfdual"], 2);
    assert_eq!(v["t2"], Value::Null);
    let t = qcc(&["asymptotics", "--ell", "8", "--type2"]);
    let v: Value = serde_json::from_str(&stdout(&t)).unwrap();
    assert_eq!(v["t2"], "30");
    assert_eq!(qcc(&["asymptotics", "--ell", "6", "--type2"]).status.code(), Some(2));
}

#[test]
fn groebner_of_desk_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "d.qc", "2 3 2\n1,1;1,1\n");
    let v: Value = serde_json::from_str(&stdout(&qcc(&["groebner", "--file", &file, "--json"]))).unwrap();
    assert_eq!(v["rows"], serde_json::json!([["1,1", "1,1"], ["0", "1,0,0,1"]]));
    assert_eq!(v["dimension"], 2);
}
