use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn bbatlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbatlas")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn glue_reports_node_count_and_ascii() {
    let out = bbatlas(&["glue", "--group", "a3-k23"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    // 2|I| - |K| nodes.
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("[shared] 2#flat"));
}

#[test]
fn breve_with_infinite_parabolic_is_a_config_error() {
    let out = bbatlas(&["glue", "--group", "inf-a3-k12", "--mode", "breve"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not finite"));
}

#[test]
fn order_queries() {
    let v = stdout_json(&bbatlas(&["order", "jleq", "--J", "", "--a", "1", "--b", "1 2"]));
    assert_eq!(v["result"], true);
    let v = stdout_json(&bbatlas(&["order", "bruhat", "--a", "1 2", "--b", "1"]));
    assert_eq!(v["result"], false);
    // With J = {1} in A2, 1 2 = x y^-1 with x = 1 and y = 2.
    let v = stdout_json(&bbatlas(&["order", "jlen", "--J", "1", "--a", "1 2"]));
    assert_eq!(v["jlength"], 0);
    assert_eq!(v["x"], "1");
    assert_eq!(v["y"], "2");
    let v = stdout_json(&bbatlas(&["order", "jinterval", "--J", "", "--a", "e", "--b", "1 2 1"]));
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
}

#[test]
fn missing_operand_is_a_usage_error() {
    assert_eq!(code(&bbatlas(&["order", "jleq", "--a", "1"])), 2);
    assert_eq!(code(&bbatlas(&["verify", "--check", "nonsense", "--group", "a2"])), 2);
    assert_eq!(code(&bbatlas(&["verify", "--group", "nonexistent", "--check", "iso"])), 2);
    assert_eq!(code(&bbatlas(&["no-such-command"])), 2);
}

#[test]
fn enumerate_counts_and_cap() {
    let v = stdout_json(&bbatlas(&["enumerate", "--group", "A2", "--max-length", "3"]));
    assert_eq!(v["count"], 6);
    assert_eq!(v["saturated"], true);
    let v = stdout_json(&bbatlas(&["enumerate", "--group", "affine-A1", "--max-length", "3", "--J", "1"]));
    assert_eq!(v["count"], 2);
    assert_eq!(code(&bbatlas(&["enumerate", "--group", "A2", "--max-length", "3", "--ball-cap", "2"])), 3);
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let checks = "iso,image,convex,thin,el,oracles,breve,glue-table";
    let out = bbatlas(&["verify", "--group", "a2-k2", "--check", checks, "--out", out_dir]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["reports"].as_array().unwrap().len(), 8);
}

#[test]
fn right_labels_fail_el_with_exit_one() {
    let out = bbatlas(&["verify", "--group", "a2", "--K", "2", "--labels", "right", "--check", "el"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["passed"], false);
}

#[test]
fn qk_verify_accepts_only_atlas_checks() {
    assert_eq!(code(&bbatlas(&["qk", "verify", "--group", "b2-k1", "--check", "iso,convex"])), 0);
    assert_eq!(code(&bbatlas(&["qk", "verify", "--group", "b2-k1", "--check", "el"])), 2);
}

#[test]
fn qk_build_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let json = dir.path().join(format!("{name}.json"));
        let dot = dir.path().join(format!("{name}.dot"));
        let args = ["qk", "build", "--config", "a2-k2", "--max-length", "2", "--out", json.to_str().unwrap()];
        let out = bbatlas(&[&args[..], &["--dot", dot.to_str().unwrap()]].concat());
        assert_eq!(code(&out), 0);
        (fs::read(json).unwrap(), fs::read_to_string(dot).unwrap())
    };
    let (a, dot) = run("first");
    let (b, _) = run("second");
    assert_eq!(a, b);
    assert!(dot.starts_with("digraph"));
    let v: Value = serde_json::from_slice(&a).unwrap();
    // Seven elements of Q_K plus the adjoined least element.
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    assert_eq!(v["elements"][0], "0");
}
