use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn catgrp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catgrp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_matches_golden_internal_category() {
    let o = catgrp(&["construct", "xmod-to-internal", &fixture("a3_s3_xmod.cg"), "X"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixture("a3_s3_internal.cg")).unwrap();
    assert_eq!(stdout(&o), golden);
}

#[test]
fn construct_back_recovers_the_crossed_module_tables() {
    let dir = tempdir();
    let out = dir.join("xm.cg");
    let o = catgrp(&["construct", "internal-to-xmod", &fixture("a3_s3_internal.cg"), "X_cat", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    // Same tables as the source fixture, under the derived names.
    let original = std::fs::read_to_string(fixture("a3_s3_xmod.cg")).unwrap();
    let strip = |s: &str| {
        let mut rows: Vec<String> = s.lines().map(str::to_string).filter(|l| l.starts_with(|c: char| c.is_ascii_digit())).collect();
        rows.sort();
        rows
    };
    assert_eq!(strip(&text), strip(&original));
    assert_eq!(catgrp(&["check", out.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(catgrp(&["roundtrip", out.to_str().unwrap(), "X_cat_xmod"]).status.code(), Some(0));
    std::fs::remove_dir_all(dir).ok();
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("catgrp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn trivial_action_prints_equivariance_witness() {
    let o = catgrp(&["check", &fixture("a3_s3_trivial_action.cg")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("X: FAIL equivariance: d(g.c) = 3 but g d(c) g^-1 = 4 [witness: 1 1]"));
}

#[test]
fn json_report_shape() {
    let o = catgrp(&["check", &fixture("a3_s3_trivial_action.cg"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["version"], 1);
    let results = v["results"].as_array().unwrap();
    let eq = results.iter().find(|r| r["check"] == "equivariance").unwrap();
    assert_eq!(eq["target"], "X");
    assert_eq!(eq["passed"], false);
    assert_eq!(eq["witness"], serde_json::json!([1, 1]));
    for r in results {
        let keys: Vec<_> = r.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 5);
        assert!(r["passed"] == true || r["witness"].is_array());
    }
    // Results follow declaration order.
    let targets: Vec<&str> = results.iter().map(|r| r["target"].as_str().unwrap()).collect();
    let mut order = targets.clone();
    order.dedup();
    assert_eq!(order, ["S3", "A3", "incl", "triv", "X"]);
}

#[test]
fn parse_errors_exit_2_with_positions() {
    let o = catgrp(&["check", &fixture("bad_row.cg")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.ends_with("bad_row.cg:4:1: error: row length 3, expected 4\n"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    let o = catgrp(&["construct", "sideways", &fixture("a3_s3_xmod.cg"), "X"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(catgrp(&["check"]).status.code(), Some(2));
    assert_eq!(catgrp(&["roundtrip", &fixture("a3_s3_xmod.cg"), "nope"]).status.code(), Some(2));
    assert_eq!(catgrp(&["construct", "internal-to-xmod", &fixture("a3_s3_xmod.cg"), "X"]).status.code(), Some(2));
    assert_eq!(catgrp(&["--version"]).status.code(), Some(0));
}

#[test]
fn builtin_then_check() {
    let o = catgrp(&["builtin", "quaternion8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("group Q8 order 8\n"));
    let dir = tempdir();
    let path = dir.join("q8.cg");
    std::fs::write(&path, &text).unwrap();
    assert_eq!(catgrp(&["check", path.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(stdout(&catgrp(&["fmt", path.to_str().unwrap()])), text);
}

#[test]
fn roundtrip_reports_identity_maps() {
    let o = catgrp(&["roundtrip", &fixture("a3_s3_xmod.cg"), "X"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "X: PASS roundtrip_xmod: crossed-module isomorphism verified\n  alpha: 0 1 2\n  beta: 0 1 2 3 4 5\n");
    let o = catgrp(&["roundtrip", &fixture("a3_s3_trivial_action.cg"), "X", "--json"]);
    assert_eq!(o.status.code(), Some(1));
}
