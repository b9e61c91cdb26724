use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn vcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vcodes"))
        .args(args)
        .env_remove("VCODES_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build_to(dir: &Path, q: u32, name: &str, extra: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let qs = q.to_string();
    let mut args = vec!["build", "--q", &qs, "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = vcodes(&args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    path
}

fn records(path: &Path) -> Vec<String> {
    let text = std::fs::read_to_string(path).unwrap();
    text.lines()
        .skip_while(|l| *l != "records")
        .skip(1)
        .map(String::from)
        .collect()
}

#[test]
fn build_q2_writes_43_records() {
    let dir = TempDir::new().unwrap();
    let path = build_to(dir.path(), 2, "c2.txt", &[]);
    assert_eq!(records(&path).len(), 43);
}

#[test]
fn build_q3_is_sorted_and_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = build_to(dir.path(), 3, "a.txt", &[]);
    let b = build_to(dir.path(), 3, "b.txt", &["--threads", "1"]);
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let recs = records(&a);
    assert_eq!(recs.len(), 274);
    let key = |r: &String| -> Vec<u32> {
        r.split_whitespace()
            .filter_map(|t| t.parse().ok())
            .collect()
    };
    assert!(recs.windows(2).all(|w| key(&w[0]) < key(&w[1])));
}

#[test]
fn build_reports_parameters() {
    let o = vcodes(&["build", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("144 / 13 / 78 / 39"), "{s}");
    assert!(s.contains("(6, 274, 4; 3)_3"), "{s}");
    let o = vcodes(&["build", "--q", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m"], 43);
    assert_eq!(v["optimum_q2"], 77);
}

#[test]
fn build_rejects_unsupported_q() {
    assert_eq!(vcodes(&["build", "--q", "6"]).status.code(), Some(2));
    assert_eq!(
        vcodes(&["build", "--q", "11", "--unchecked"]).status.code(),
        Some(2)
    );
    assert_eq!(vcodes(&["build", "--q", "7"]).status.code(), Some(2));
}

#[test]
fn build_q7_unchecked() {
    let dir = TempDir::new().unwrap();
    let path = build_to(dir.path(), 7, "c7.txt", &["--unchecked"]);
    assert_eq!(records(&path).len(), 35778);
}

#[test]
fn build_reports_io_failure() {
    let o = vcodes(&["build", "--q", "2", "--out", "/nonexistent-dir/x.txt"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_accepts_built_code() {
    let dir = TempDir::new().unwrap();
    let path = build_to(dir.path(), 3, "c3.txt", &[]);
    let o = vcodes(&["verify", "--in", path.to_str().unwrap(), "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("methods agree: yes"), "{s}");
    assert_eq!(s.matches("minimum distance 4").count(), 2);
}

#[test]
fn verify_json_input() {
    let dir = TempDir::new().unwrap();
    let path = build_to(dir.path(), 2, "c2.json", &["--format", "json"]);
    let o = vcodes(&["verify", "--in", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reports"][0]["min_distance"], 4);
}

#[test]
fn verify_flags_duplicated_record() {
    let dir = TempDir::new().unwrap();
    let path = build_to(dir.path(), 2, "c2.txt", &[]);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let dup = lines[12];
    lines.insert(12, dup);
    let body = lines.join("\n").replace("M 43", "M 44");
    let bad = dir.path().join("dup.txt");
    std::fs::write(&bad, body).unwrap();
    for method in ["naive", "lineindex", "both"] {
        let o = vcodes(&["verify", "--in", bad.to_str().unwrap(), "--method", method]);
        assert_eq!(o.status.code(), Some(1));
        let s = stdout(&o);
        assert!(
            s.contains("violation: records 2 and 3 are at distance 0"),
            "{s}"
        );
    }
}

#[test]
fn verify_rejects_garbage() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "not a code file\n").unwrap();
    assert_eq!(
        vcodes(&["verify", "--in", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.txt");
    assert_eq!(
        vcodes(&["verify", "--in", missing.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn classify_q5() {
    let o = vcodes(&["classify", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("q = 5: (31, 465, 310, 3100)"));
}

#[test]
fn extend_q4_is_complete() {
    let o = vcodes(&["extend", "--q", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("addable: 0"));
}

#[test]
fn extend_q3_from_file() {
    let dir = TempDir::new().unwrap();
    let path = build_to(dir.path(), 3, "c3.txt", &[]);
    let o = vcodes(&[
        "extend",
        "--q",
        "3",
        "--in",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["addable_count"].as_u64().unwrap() > 0);
    assert!(v["greedy_count"].as_u64().unwrap() > 0);
    let o = vcodes(&["extend", "--q", "2", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(vcodes(&["extend", "--q", "7"]).status.code(), Some(2));
}

#[test]
fn inspect_singer_q3() {
    let o = vcodes(&["inspect", "--q", "3", "--check", "singer"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("10 orbits x 13, caps: yes"), "{s}");
    assert!(s.contains("invariant planes: 2"), "{s}");
    assert_eq!(
        vcodes(&["inspect", "--q", "4", "--check", "singer"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn inspect_all_q2_passes_and_q3_reports_arc_failure() {
    let o = vcodes(&["inspect", "--q", "2", "--check", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("SKIP [singer]"));
    let o = vcodes(&["inspect", "--q", "3", "--check", "arcs"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1872 without a 5-arc"));
}

#[test]
fn threads_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_vcodes"))
        .args(["classify", "--q", "3"])
        .env("VCODES_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(vcodes(&["build"]).status.code(), Some(2));
    assert_eq!(
        vcodes(&["inspect", "--q", "3", "--check", "nope"])
            .status
            .code(),
        Some(2)
    );
}
