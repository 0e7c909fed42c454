use std::process::{Command, Output};

use serde_json::Value;

fn zsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zsl"))
        .args(args)
        .env_remove("ZSL_CACHE_DIR")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = zsl(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_ms");
            m.remove("timings");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

#[test]
fn davenport_json() {
    let v = json(&["davenport", "Z3xZ3"]);
    assert_eq!(v["value_Dk"], 5);
    assert_eq!(v["value_dk"], 4);
    assert_eq!(v["witness_k_max"], 0);
}

#[test]
fn dk_table_csv() {
    let out = zsl(&["dk-table", "Z2", "--k-upto", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,D_k,d_k,witness");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("3,6,5,"));
}

#[test]
fn ring_beta_example() {
    let v = json(&[
        "ring-beta",
        "--gens",
        "a:1,b:3",
        "--rels",
        "b^3-a^9, a*b^2-a^7",
        "--k",
        "3",
        "--cutoff",
        "30",
    ]);
    assert_eq!(v["beta_k"], 6);
    assert_eq!(v["status"], "verified-up-to-cutoff");
}

#[test]
fn invariant_commands() {
    assert_eq!(json(&["beta", "reg(Z3)", "--k", "2"])["beta_k"], 6);
    assert_eq!(json(&["crosscheck", "Z2xZ2"])["passed"], true);
    let s = json(&["sigma-zpzd", "SD(5,4,2)"]);
    assert_eq!(s["sigma"], 5);
    assert_eq!(json(&["sigma-az2", "6", "3"])["passed"], true);
    assert_eq!(
        json(&["product-bound", "Z2", "Z2", "--r", "1", "--s", "2"])["d_product"],
        5
    );
    assert_eq!(json(&["support-lemma", "7", "1,3"])["p"], 7);
    assert_eq!(json(&["linearity", "Z4"])["slope"], 4);
}

#[test]
fn bad_input_exits_with_2() {
    let out = zsl(&["davenport", "Z2xQ3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    assert_eq!(zsl(&["sigma-zpzd", "SD(4,2,3)"]).status.code(), Some(2));
    assert_eq!(
        zsl(&["eta", "Z3", "--format", "csv"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_all_filtered_and_reproducible() {
    let args = ["verify-all", "--group", "Z2", "--group", "Z3"];
    let mut a = json(&args);
    let mut b = json(&args);
    assert_eq!(a["schema_version"], 1);
    assert_eq!(a["summary"]["failed"], 0);
    assert!(a["summary"]["skipped"].as_u64().unwrap() > 0);
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn injected_fault_fails_named_check() {
    let out = zsl(&[
        "verify-all",
        "--group",
        "Z3",
        "--inject-fault",
        "generalized-constants",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("2,generalized-constants,failed")));
}

#[test]
fn out_file_and_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("d.json");
    let cache = dir.path().join("cache");
    for _ in 0..2 {
        let status = Command::new(env!("CARGO_BIN_EXE_zsl"))
            .args([
                "davenport",
                "Z4",
                "--k",
                "2",
                "--out",
                out_path.to_str().unwrap(),
            ])
            .env("ZSL_CACHE_DIR", &cache)
            .status()
            .unwrap();
        assert!(status.success());
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
        assert_eq!(v["value_Dk"], 8);
    }
    assert!(cache.join("kmax-Z4.memo").exists());
}
