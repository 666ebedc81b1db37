//! End-to-end tests of the binary: exit-code contract, determinism, and
//! validation of every report format against the shipped schema.

use std::io::Write;
use std::process::{Command, Output};

mod schema;

fn ramcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramcover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ramcover_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramcover"))
        .env(key, value)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write_data(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn assert_schema(value: &serde_json::Value, def: &str) {
    let schema_text = include_str!("../schemas/reports.schema.json");
    let schema: serde_json::Value = serde_json::from_str(schema_text).unwrap();
    if let Err(e) = schema::validate(&schema, def, value) {
        panic!("schema validation against {def} failed: {e}\nvalue: {value:#}");
    }
}

#[test]
fn two_set_table_has_36_entries_at_13() {
    let out = ramcover(&["tables", "gen", "--table", "two-set", "--ell", "13"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap().len(), 36);
    assert_schema(&v, "table");
}

#[test]
fn all_table_kinds_emit_schema_valid_json() {
    for (kind, ell) in [("two-set", "14"), ("f", "13"), ("solvable", "5"), ("nonexist", "12")] {
        let out = ramcover(&["tables", "gen", "--table", kind, "--ell", ell]);
        assert!(out.status.success(), "{kind} at {ell}");
        assert_schema(&stdout_json(&out), "table");
    }
}

#[test]
fn csv_format_has_fixed_columns() {
    let out = ramcover(&[
        "tables", "gen", "--table", "two-set", "--ell", "13", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("label,degree,partition\n"));
    assert!(text.contains("I1.1(a=1,ell=13),13,\"13\""));
}

#[test]
fn counts_over_a_range() {
    let out = ramcover(&["tables", "count", "--ell-range", "13..16"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_schema(&v, "counts");
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["two_set_entries"], 36);
    assert_eq!(rows[0]["f_types"], 36);
}

#[test]
fn certify_run_passes_and_exits_zero() {
    let out = ramcover(&["certify", "run", "--label", "F4.3", "--ell", "13"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["expectation_met"], true);
    assert_schema(&v, "cert_report");
}

#[test]
fn certify_witness_labels_expect_imprimitivity() {
    let out = ramcover(&["certify", "run", "--label", "I2.N1-witness", "--ell", "8"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["expectation_met"], true);
    assert_eq!(v["pairing_preserved"], true);
    assert_eq!(v["report"]["checks"]["PRIMITIVE"]["pass"], false);
    assert_schema(&v, "cert_report");
}

#[test]
fn certify_inadmissible_degree_is_usage_error() {
    let out = ramcover(&["certify", "run", "--label", "F4.3", "--ell", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gx2_worked_identity() {
    let f = write_data(r#"{"degree": 13, "branches": [[13],[10,3],"2,1^*"]}"#);
    let out = ramcover(&["bounds", "gx2", "--data", f.path().to_str().unwrap(), "--gy1", "0"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["g_x2"], 0);
    assert_schema(&v, "gx2");
}

#[test]
fn classify_and_filter_reports() {
    let f = write_data(r#"{"degree": 14, "branches": ["3,11", "1^2,2^*", "2^*", "2,1^*"]}"#);
    let out = ramcover(&["bounds", "classify", "--data", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["case_label"], "I2");
    assert_schema(&v, "classify");

    let out = ramcover(&["bounds", "filter", "--data", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["triggered"], false);
    assert_schema(&v, "filter");

    // an absent row of the 2-3-6 family triggers condition 2
    let f = write_data(r#"{"degree": 12, "branches": ["2^*", "3^*", "1^2,4,6"]}"#);
    let out = ramcover(&["bounds", "filter", "--data", f.path().to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["triggered"], true);
    assert_schema(&v, "filter");
}

#[test]
fn malformed_data_file_is_usage_error_with_diagnostic() {
    let f = write_data(r#"{"degree": 13, "branches": [[13],[10,4]]}"#);
    let out = ramcover(&["bounds", "gx2", "--data", f.path().to_str().unwrap(), "--gy1", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("sum"), "diagnostic names the problem: {err}");

    let f = write_data(r#"{"degree": 13, "branches": [["2^^3"]]}"#);
    let out = ramcover(&["bounds", "gx2", "--data", f.path().to_str().unwrap(), "--gy1", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ramcover(&["bounds", "gx2", "--data", "/nonexistent.json", "--gy1", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_exits_two() {
    let out = ramcover(&["tables", "gen", "--table", "bogus", "--ell", "13"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ramcover(&["tables", "gen", "--table", "two-set", "--ell", "12"]);
    assert_eq!(out.status.code(), Some(1)); // inside the range contract this is a domain failure
}

#[test]
fn oracle_ledger_is_deterministic_and_passes() {
    let args = [
        "bounds", "oracle", "--max-degree", "6", "--max-t", "3", "--seed", "11",
    ];
    let out1 = ramcover(&args);
    let out2 = ramcover(&args);
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout, "identical seed, identical bytes");
    let v = stdout_json(&out1);
    assert_eq!(v["pass"], true);
    assert_schema(&v, "oracle");
}

#[test]
fn induce_lift_and_genera() {
    let f = write_data(r#"{"degree": 13, "branches": [[13],[10,3],"2,1^*"]}"#);
    let out = ramcover(&["induce", "lift", "--data", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["lifted"]["degree"], 78);
    assert_eq!(v["genus"]["genus"], 0);
    assert_schema(&v, "lift");

    let out = ramcover(&[
        "induce", "genera", "--label", "F1.9", "--ell", "12", "--t", "2",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["report"]["g_xt"], 0);
    assert_schema(&v, "genera");
}

#[test]
fn refute_report_for_small_cyclic_family() {
    let f = write_data(r#"{"degree": 5, "branches": [[5],[5]]}"#);
    let out = ramcover(&["certify", "refute", "--data", f.path().to_str().unwrap(), "--cap", "6"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["alt_containing"], 0);
    assert!(v["tuples_found"].as_u64().unwrap() > 0);
    assert_schema(&v, "refute");
}

#[test]
fn perm_classify_report() {
    let out = ramcover(&[
        "perm", "classify", "--degree", "10", "--gens", "(1,2);(1,2,3,4,5,6,7,8,9,10)",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["kind"], "SYMMETRIC");
    assert_schema(&v, "perm_classify");
    // parse diagnostics name the offending token
    let out = ramcover(&["perm", "classify", "--degree", "5", "--gens", "(1,9)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains('9'));
}

#[test]
fn caps_env_override_is_honored() {
    let out = ramcover_with_env(
        &["perm", "classify", "--degree", "10", "--gens", "(1,2);(1,2,3,4,5,6,7,8,9,10)"],
        "RAMCOVER_CAPS",
        "stab_degree=5",
    );
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["method"], "JORDAN_CRITERION");
    let out = ramcover_with_env(
        &["perm", "classify", "--degree", "5", "--gens", "(1,2)"],
        "RAMCOVER_CAPS",
        "nonsense",
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_output_is_deterministic() {
    let args = ["tables", "gen", "--table", "f", "--ell", "14"];
    let a = ramcover(&args);
    let b = ramcover(&args);
    assert_eq!(a.stdout, b.stdout);
    // canonical ordering: labels ascend in natural order
    let v = stdout_json(&a);
    let labels: Vec<String> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["label"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = labels.clone();
    sorted.sort_by_key(|l| {
        l.split(|c: char| !c.is_ascii_digit())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u64>().unwrap_or(0))
            .collect::<Vec<_>>()
    });
    assert_eq!(labels.len(), sorted.len());
}
