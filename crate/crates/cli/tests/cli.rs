use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplicode"))
}

fn example(name: &str) -> String {
    format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin()
        .args(args)
        .env_remove("SIMPLICODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("simplicode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_json_reports_parameters() {
    let o = run(&[
        "analyze",
        "--spec",
        &example("two-weight-120.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["n"].as_u64(), v["k"].as_u64(), v["d"].as_u64()),
        (Some(120), Some(7), Some(60))
    );
    assert_eq!(v["distribution"]["64"], 15);
    assert_eq!(v["griesmer_attaining"], true);
}

#[test]
fn analyze_reports_css() {
    let o = run(&[
        "analyze",
        "--spec",
        &example("two-weight-448.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["css"], serde_json::json!([448, 430, 3]));
}

#[test]
fn analyze_csv_and_text() {
    let o = run(&[
        "analyze",
        "--spec",
        &example("four-weight-42.json"),
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o), "weight,count\n0,1\n20,21\n21,32\n24,7\n28,3\n");
    let o = run(&["analyze", "--spec", &example("four-weight-42.json")]);
    assert!(stdout(&o).contains("[42, 6, 20]"));
}

#[test]
fn bad_spec_is_a_usage_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"m": 2, "A1": {"kind": "bogus"}}"#).unwrap();
    let o = run(&["analyze", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("parsing"));
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(
        run(&["verify", "--family", "7", "--m", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify", "--family", "4", "--m", "4"]).status.code(),
        Some(1)
    );
    let o = run(&[
        "analyze",
        "--spec",
        &example("two-weight-120.json"),
        "--engines",
        "",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_family_one() {
    let o = run(&["verify", "--family", "1", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("4368 passed, 0 failed"));
}

#[test]
fn verify_family_six_attains_griesmer() {
    let o = run(&["verify", "--family", "6", "--m", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 0);
}

#[test]
fn verify_reports_hypothesis_skips() {
    let o = run(&["verify", "--family", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    assert!(last.contains("skipped (hypotheses)"), "{last}");
    assert!(!last.contains(" 0 skipped"), "{last}");
}

#[test]
fn srg_with_graph() {
    let o = run(&[
        "srg",
        "--spec",
        &example("two-weight-120.json"),
        "--build-graph",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("(128, 120, 112, 120) verified"), "{out}");
    assert!(out.contains("complement  (128, 7, 6, 0)"), "{out}");
}

#[test]
fn srg_rejects_four_weight_code() {
    let o = run(&["srg", "--spec", &example("four-weight-42.json")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reproduce_passes() {
    let o = run(&["reproduce"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("12/12 golden checks passed"));
}

#[test]
fn reproduce_bless_and_tamper() {
    let path = scratch("golden.json");
    let p = path.to_str().unwrap();
    let o = run(&["reproduce", "--bless", "--golden", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(run(&["reproduce", "--golden", p]).status.code(), Some(0));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["[120,7,60] enumerator"]["60"] = Value::from(111);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = run(&["reproduce", "--golden", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("11/12"));
    assert!(
        stderr(&o).contains("golden 111, computed 112"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn json_is_identical_across_worker_counts() {
    let spec = example("whole-complement.json");
    let a = run(&[
        "--workers",
        "1",
        "analyze",
        "--spec",
        &spec,
        "--format",
        "json",
    ]);
    let b = run(&[
        "--workers",
        "3",
        "analyze",
        "--spec",
        &spec,
        "--format",
        "json",
    ]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn budget_env_disables_bruteforce_with_warning() {
    let o = bin()
        .args([
            "analyze",
            "--spec",
            &example("two-weight-120.json"),
            "--format",
            "json",
        ])
        .env("SIMPLICODE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: bruteforce skipped"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["engines"], serde_json::json!(["closedform", "charsum"]));
}

#[test]
fn explicit_spec_falls_back_to_enumeration() {
    let o = run(&[
        "analyze",
        "--spec",
        &example("explicit.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["engines"], serde_json::json!(["charsum", "bruteforce"]));
}

#[test]
fn build_dumps_generator() {
    let spec = example("two-weight-120.json");
    let o = run(&["build", "--spec", &spec]);
    let rows: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r.len() == 120));
    let o = run(&["build", "--spec", &spec, "--reduced", "--output", "hex"]);
    let cols = stdout(&o);
    assert_eq!(cols.lines().count(), 120);
    assert!(cols.lines().all(|c| c.len() == 2));
}
