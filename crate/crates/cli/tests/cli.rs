use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn nu_engine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nu-engine"))
        .args(args)
        .env_remove("NU_REPORT_TIMINGS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn parse_summarizes_each_group() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "groups.txt",
        "group S3 = < a, b | a^2, b^2, (a*b)^3 >\ngroup C5 = < x | x^5 >\n",
    );
    let o = nu_engine(&["parse", &f]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("S3: 2 generators, 3 relators"), "{out}");
    assert!(out.contains("C5: 1 generators, 1 relators"), "{out}");
}

#[test]
fn malformed_file_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", "group S3 = < a, b | a^2, b^2 (a*b)^3 >\n");
    let o = nu_engine(&["parse", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:30"));
}

#[test]
fn enumerate_reports_orders() {
    assert!(stdout(&nu_engine(&["enumerate", "--group", "C2"])).contains("order 2"));
    assert!(stdout(&nu_engine(&["enumerate", "--group", "D4"])).contains("order 8"));
}

#[test]
fn coset_limit_exits_with_three() {
    let o = nu_engine(&["enumerate", "--group", "H27", "--max-cosets", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn nonpositive_limits_are_rejected() {
    assert_eq!(nu_engine(&["enumerate", "--group", "C2", "--max-cosets", "0"]).status.code(), Some(2));
    assert_eq!(nu_engine(&["enumerate", "--group", "C2", "--max-time", "0"]).status.code(), Some(2));
}

#[test]
fn nu_c2_all_checks_pass() {
    let o = nu_engine(&["nu", "--group", "C2", "--checks", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn theorem_a_prints_seven_lines() {
    let o = nu_engine(&["nu", "--group", "S3", "--checks", "thmA"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let section = out.split("### thmA").nth(1).unwrap();
    let lines = section.lines().filter(|l| l.starts_with("- [pass] (")).count();
    assert_eq!(lines, 7, "{out}");
}

#[test]
fn unknown_check_is_a_usage_error() {
    let o = nu_engine(&["nu", "--group", "S3", "--checks", "thmZ"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_group_is_a_usage_error() {
    assert_eq!(nu_engine(&["nu", "--group", "C7"]).status.code(), Some(2));
}

#[test]
fn cayley_strategy_json() {
    let o = nu_engine(&["nu", "--group", "S3", "--strategy", "cayley", "--checks", "thmA", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["strategy"], "cayley");
    assert_eq!(v["orders"]["nu"], 216);
}

#[test]
fn tensor_orders() {
    // C2 (x) C2 = Z/2 (x) Z/2
    assert!(stdout(&nu_engine(&["tensor", "--group", "C2"])).contains("order 2"));
    assert!(stdout(&nu_engine(&["tensor", "--group", "C1"])).contains("order 1"));
    assert_eq!(nu_engine(&["tensor", "--group", "H27"]).status.code(), Some(3));
}

#[test]
fn corpus_include_none_is_empty() {
    let o = nu_engine(&["corpus", "--include", "none", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 0);
}

#[test]
fn corpus_include_one_entry() {
    let o = nu_engine(&["corpus", "--include", "C2", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    assert_eq!(v["entries"][0]["group"], "C2");
}

#[test]
fn heavy_entry_needs_the_flag() {
    assert_eq!(nu_engine(&["corpus", "--include", "H27"]).status.code(), Some(2));
}

#[test]
fn wrong_presentation_fails_the_gate() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s3.txt", "group S3 = < a | a^7 >\n");
    let o = nu_engine(&["corpus", &f, "--include", "S3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("### gate: fail"));
}

#[test]
fn corpus_json_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = nu_engine(&["corpus", "--include", "S3,Q8,C3xC3", "--seed", "7", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}
