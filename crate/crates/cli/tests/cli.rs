use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gchar"))
        .args(args)
        .output()
        .expect("run gchar")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build(entry: &str, dir: &Path) {
    let out = dir.join(entry);
    let o = gchar(&["catalog", "build", entry, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

fn path(dir: &Path, entry: &str, file: &str) -> String {
    dir.join(entry).join(file).display().to_string()
}

#[test]
fn betti_of_residue_field_over_polynomial_ring() {
    let tmp = tempfile::tempdir().unwrap();
    build("regular2", tmp.path());
    let ring = path(tmp.path(), "regular2", "ring.gr");
    let k = path(tmp.path(), "regular2", "k.gm");
    let o = gchar(&["betti", "--ring", &ring, "--module", &k, "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["invariant"], "betti");
    assert_eq!(v[0]["value"], serde_json::json!([1, 2, 1]));
    assert_eq!(v[0]["status"], "exact");
    assert_eq!(v[1]["value"], 2);
    assert_eq!(v[0]["bounds"]["hmax"], 8);
}

#[test]
fn json_output_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    build("cusp", tmp.path());
    let ring = path(tmp.path(), "cusp", "ring.gr");
    let m = path(tmp.path(), "cusp", "R_m2.gm");
    let args = ["gapprox", "--ring", &ring, "--module", &m, "--format", "json"];
    let a = gchar(&args);
    let b = gchar(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn chi_g_over_the_cusp() {
    let tmp = tempfile::tempdir().unwrap();
    build("cusp", tmp.path());
    let ring = path(tmp.path(), "cusp", "ring.gr");
    for (file, want) in [("k.gm", "1"), ("m.gm", "2"), ("R_m2.gm", "1")] {
        let m = path(tmp.path(), "cusp", file);
        let o = gchar(&["chig", "--ring", &ring, "--module", &m]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), format!("chi_g = {want} (exact)"), "{file}");
    }
}

#[test]
fn reproduce_reports_each_check() {
    let o = gchar(&["reproduce", "--suite", "exdim1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains("= PASS")).count(), 7);
    assert!(text.contains("exdim1: 7/7 checks passed"));

    let o = gchar(&["reproduce", "--suite", "series", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let recs = v.as_array().unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r["value"]["verdict"] == "PASS"));
}

#[test]
fn input_errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.gr");
    std::fs::write(&bad, "garbage here\n").unwrap();
    let o = gchar(&["betti", "--ring", bad.to_str().unwrap(), "--module", "x.gm"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));

    let o = gchar(&["reproduce", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));

    let o = gchar(&["catalog", "build", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn undefined_chi_is_a_computation_error() {
    let tmp = tempfile::tempdir().unwrap();
    build("cusp", tmp.path());
    let ring = path(tmp.path(), "cusp", "ring.gr");
    let m = path(tmp.path(), "cusp", "m.gm");
    let o = gchar(&["chi", "--ring", &ring, "--module", &m]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn regular_quotient_formula() {
    let tmp = tempfile::tempdir().unwrap();
    build("regular2", tmp.path());
    let ring = path(tmp.path(), "regular2", "ring.gr");
    let r = path(tmp.path(), "regular2", "R.gm");
    let o = gchar(&["quotient-regular", "--ring", &ring, "--module", &r, "--element", "x"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("formula_holds        = true"));
}

#[test]
fn catalog_restricted_epsilon_tau_for_the_cusp() {
    let o = gchar(&["epsilon-tau", "--catalog", "cusp", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let eps: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["invariant"].as_str().unwrap().starts_with("epsilon"))
        .map(|r| r["value"].as_i64().unwrap())
        .collect();
    assert_eq!(eps, [2, 1, 1, 1]);
    assert!(v[0]["status"] == "catalog-restricted");
}

#[test]
fn catalog_list_names_entries() {
    let o = gchar(&["catalog", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for e in ["regular2", "cusp", "node", "quadric", "x2"] {
        assert!(text.contains(e), "{e}");
    }
}
