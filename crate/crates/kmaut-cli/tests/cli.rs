use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kmaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmaut")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &[u8]) -> PathBuf {
    let path = std::env::temp_dir().join(format!("kmaut-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file");
    path
}

#[test]
fn tables_a1_second_kind_has_three_rows() {
    let out = kmaut(&["tables", "--family", "a", "--n", "1", "--k", "1", "--kind", "2"]);
    assert!(out.status.success());
    let rows = json(&out);
    assert_eq!(rows[0]["count"], 3);
    assert_eq!(rows[0]["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn tables_text_and_latex_emit() {
    let text = kmaut(&["tables", "--algebra", "d4", "--kind", "2", "--emit", "text"]);
    assert!(text.status.success());
    let text = String::from_utf8(text.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().next().unwrap().trim_end().ends_with("10"));
    let latex = kmaut(&["tables", "--family", "g2", "--emit", "latex"]);
    assert!(latex.status.success());
    assert!(String::from_utf8(latex.stdout).unwrap().contains("\\begin{tabular}"));
}

#[test]
fn realize_then_invariant_round_trips() {
    let inv = temp_file("inv.json", br#"{"kind":1,"q":2,"p":1,"rho":"id","beta":"id","k":1}"#);
    let out = kmaut(&["realize", "--in", inv.to_str().unwrap(), "--algebra", "b2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let phi = temp_file("phi.json", &out.stdout);
    let back = json(&kmaut(&["invariant", "--in", phi.to_str().unwrap()]));
    assert_eq!(back["kind"], 1);
    assert_eq!(back["q"], 2);
    assert_eq!(back["p"], 1);
    let same = json(&kmaut(&["conjugate", "--a", phi.to_str().unwrap(), "--b", phi.to_str().unwrap()]));
    assert_eq!(same["result"], "conjugate");
}

#[test]
fn different_invariants_are_not_conjugate() {
    let a = temp_file("a.json", br#"{"kind":1,"q":2,"p":1,"rho":"id","beta":"id","k":1}"#);
    let b = temp_file("b.json", br#"{"kind":2,"pair":["id","id"],"k":1}"#);
    let pa = temp_file("pa.json", &kmaut(&["realize", "--in", a.to_str().unwrap(), "--algebra", "a2"]).stdout);
    let pb = temp_file("pb.json", &kmaut(&["realize", "--in", b.to_str().unwrap(), "--algebra", "a2"]).stdout);
    let out = json(&kmaut(&["conjugate", "--a", pa.to_str().unwrap(), "--b", pb.to_str().unwrap()]));
    assert_eq!(out["result"], "not_conjugate");
}

#[test]
fn conj_linear_realize_round_trips() {
    let inv = temp_file("conj.json", br#"{"kind":2,"pair":["mu*omega","id*omega"],"k":2}"#);
    let out = kmaut(&["realize", "--in", inv.to_str().unwrap(), "--algebra", "a2"]);
    assert!(out.status.success());
    let phi = temp_file("conj-phi.json", &out.stdout);
    let first = kmaut(&["invariant", "--in", phi.to_str().unwrap()]);
    let canonical = temp_file("conj-canonical.json", &first.stdout);
    let again = temp_file("conj-again.json", &kmaut(&["realize", "--in", canonical.to_str().unwrap(), "--algebra", "a2"]).stdout);
    assert_eq!(json(&first), json(&kmaut(&["invariant", "--in", again.to_str().unwrap()])));
}

#[test]
fn realform_reports_fixed_and_closed_basis() {
    let out = kmaut(&["realform", "--pair", "mu,id", "--algebra", "a1"]);
    assert!(out.status.success());
    let basis = json(&out);
    assert_eq!(basis["fixed"], true);
    assert_eq!(basis["closed"], true);
    assert_eq!(basis["conductor"], 2);
    let text = kmaut(&["realform", "--pair", "mu,id", "--algebra", "a2", "--window", "2", "--emit", "text"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap().lines().count(), 6);
}

#[test]
fn bad_input_yields_json_error_and_exit_two() {
    for args in [
        vec!["tables", "--bogus"],
        vec!["tables", "--family", "z", "--n", "2"],
        vec!["realform", "--pair", "mu", "--algebra", "a2"],
        vec!["invariant", "--in", "/nonexistent/kmaut.json"],
    ] {
        let out = kmaut(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(json(&out)["error"].is_string(), "{args:?}");
    }
}

#[test]
fn selftest_json_lists_twelve_criteria() {
    let out = kmaut(&["selftest", "--emit", "json"]);
    assert!(out.status.success());
    let reports = json(&out);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 12);
    assert!(reports.iter().all(|r| r["passed"] == true));
}
