use std::process::{Command, Output};

use serde_json::Value;

fn brieskorn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brieskorn"))
        .args(args)
        .env_remove("BRIESKORN_JOBS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = brieskorn(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON envelope")
}

/// Every float in the tree sits under a `diagnostic` key.
fn floats_outside_diagnostic(v: &Value, path: &str, out: &mut Vec<String>) {
    match v {
        Value::Number(n) if n.is_f64() => out.push(path.to_string()),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| floats_outside_diagnostic(x, &format!("{path}/{i}"), out)),
        Value::Object(o) => o
            .iter()
            .filter(|(k, _)| k.as_str() != "diagnostic")
            .for_each(|(k, x)| floats_outside_diagnostic(x, &format!("{path}/{k}"), out)),
        _ => {}
    }
}

#[test]
fn classify_poincare_sphere() {
    let v = json(&["classify", "5", "3", "2"]);
    assert_eq!(v["schema_version"], "1.0");
    assert_eq!(v["command"], "classify");
    assert_eq!(v["input"]["exponents"], serde_json::json!([2, 3, 5]));
    let r = &v["result"];
    assert_eq!(r["homology_class"], "integral_homology_sphere");
    assert_eq!(r["fano"], true);
    assert_eq!(r["torsion_order"], "1");
    assert_eq!(r["milnor_number"], "8");
}

#[test]
fn input_order_is_canonicalized() {
    let a = brieskorn(&["classify", "5", "3", "2"]);
    let b = brieskorn(&["classify", "2", "5", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn signature_anchor() {
    let v = json(&["signature", "5", "3", "2", "2", "2"]);
    let r = &v["result"];
    assert_eq!(r["tau"], 8);
    assert_eq!(r["km_index"], "1");
    assert_eq!(r["zagier"]["tau"], 8);
    assert_eq!(v["warnings"], serde_json::json!([]));
    let mut floats = Vec::new();
    floats_outside_diagnostic(&v, "", &mut floats);
    assert!(floats.is_empty(), "{floats:?}");
}

#[test]
fn reproduce_bp_orders_reports_the_mismatch() {
    let v = json(&["reproduce", "bp-orders"]);
    let r = &v["result"];
    assert_eq!(r["total"], 4);
    assert_eq!(r["matched"], 3);
    assert_eq!(r["cells"][3]["computed"], "261632");
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn csv_has_fixed_columns() {
    let out = brieskorn(&["--format", "csv", "reproduce", "bp-orders"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "label,computed,expected,matches");
    assert_eq!(lines[1], "|bP_8|,28,28,true");
    assert_eq!(lines.len(), 5);
    let out = brieskorn(&["--format", "csv", "sequence", "c", "--upto", "4"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "k,value\n1,2\n2,3\n3,7\n4,43\n"
    );
}

#[test]
fn output_is_identical_across_worker_counts() {
    let args = ["enumerate", "--dim", "5", "--filter", "homotopy-sphere,ke"];
    let one = brieskorn(&[&["--jobs", "1"], &args[..]].concat());
    let four = brieskorn(&[&["--jobs", "4"], &args[..]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["result"]["total"], 68);
    let sig = ["signature", "2", "3", "5", "7", "11", "13", "17"];
    assert_eq!(
        brieskorn(&[&["--jobs", "1"], &sig[..]].concat()).stdout,
        brieskorn(&[&["--jobs", "4"], &sig[..]].concat()).stdout
    );
}

#[test]
fn jobs_environment_variable() {
    let run = |env: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_brieskorn"))
            .args(args)
            .env("BRIESKORN_JOBS", env)
            .output()
            .unwrap()
    };
    let ok = run("2", &["classify", "2", "3", "5"]);
    assert!(ok.status.success());
    assert_eq!(
        run("zero", &["classify", "2", "3", "5"]).status.code(),
        Some(2)
    );
    // the flag wins over a malformed variable
    assert!(run("zero", &["--jobs", "1", "classify", "2", "3", "5"])
        .status
        .success());
}

#[test]
fn exit_codes() {
    assert_eq!(
        brieskorn(&["enumerate", "--dim", "5", "--filter", "fano"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(brieskorn(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(brieskorn(&["ke", "7"]).status.code(), Some(2));
    assert_eq!(brieskorn(&["classify", "0", "3"]).status.code(), Some(2));
    assert_eq!(
        brieskorn(&["signature", "2", "3", "5", "7"]).status.code(),
        Some(2)
    );
    assert_eq!(
        brieskorn(&["enumerate", "--dim", "6", "--filter", "ke"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(brieskorn(&["--help"]).status.code(), Some(0));
}

#[test]
fn invariants_from_weights() {
    let v = json(&[
        "invariants",
        "--weights",
        "1",
        "2",
        "3",
        "5",
        "--degree",
        "10",
    ]);
    let r = &v["result"];
    assert_eq!(r["milnor_number"], "84");
    assert_eq!(r["betti"], "8");
    assert_eq!(r["fano_class"], "positive");
    let v = json(&["invariants", "--weights", "1", "1", "1", "--degree", "3"]);
    assert_eq!(v["result"]["genus"], "1");
    let v = json(&["invariants", "3", "3", "3", "7"]);
    assert_eq!(v["result"]["delta_at_one"]["torsion_order"], "49");
}

#[test]
fn ke_pair_rules() {
    let d = json(&["ke", "2", "3", "7", "29", "30"]);
    assert_eq!(d["result"]["passes"], true);
    assert_eq!(d["result"]["reciprocal_sum"], "3179/3045");
    let w = json(&["ke", "--pairs", "with-diagonal", "2", "3", "7", "29", "30"]);
    assert_eq!(w["result"]["passes"], false);
    assert_eq!(w["input"]["pair_rule"], "with-diagonal");
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let p = path.to_str().unwrap();
    let first = brieskorn(&["--cache", p, "signature", "7", "3", "2", "2", "2"]);
    let second = brieskorn(&["--cache", p, "signature", "2", "2", "2", "3", "7"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1);
    // a torn final record is skipped, and the next result is appended after it
    std::fs::write(&path, format!("{text}{{\"key\":\"trunc")).unwrap();
    let third = brieskorn(&["--cache", p, "signature", "2", "2", "2", "3", "7"]);
    assert_eq!(first.stdout, third.stdout);
    let other = brieskorn(&["--cache", p, "classify", "2", "3", "7"]);
    assert!(other.status.success());
    let cached: Value = serde_json::from_str(
        std::fs::read_to_string(&path)
            .unwrap()
            .lines()
            .last()
            .unwrap(),
    )
    .unwrap();
    assert_eq!(cached["command"], "classify");
}
