//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to
//! see the lines.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use catgrp::suite;

const BUDGET: Duration = Duration::from_secs(60);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn catgrp(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_catgrp")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), out.stdout)
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let outcomes = suite::run_all();
    let elapsed = start.elapsed();
    for o in &outcomes {
        println!("{o}");
    }
    println!("suite finished in {:.2}s", elapsed.as_secs_f64());
    assert_eq!(outcomes.len(), 9);
    let ids: Vec<u8> = outcomes.iter().map(|o| o.id).collect();
    assert_eq!(ids, (1..=9).collect::<Vec<_>>());
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.to_string()).collect();
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.join("\n"));
    assert!(elapsed < BUDGET, "suite took {elapsed:?}");
}

/// Criterion 9 again, through the real binary and real files.
#[test]
fn acceptance_cli_exit_codes() {
    let cases = [("a3_s3_xmod.cg", 0), ("a3_s3_trivial_action.cg", 1), ("bad_row.cg", 2)];
    for (name, want) in cases {
        let path = fixture(name);
        let (code, _) = catgrp(&["check", path.to_str().unwrap()]);
        let line = format!("exit code {code} for {name}, expected {want}");
        println!("{} {line}", if code == want { "PASS" } else { "FAIL" });
        assert_eq!(code, want, "{line}");
    }
    let path = fixture("a3_s3_trivial_action.cg");
    let (_, first) = catgrp(&["check", path.to_str().unwrap(), "--json"]);
    let (_, second) = catgrp(&["check", path.to_str().unwrap(), "--json"]);
    assert!(!first.is_empty());
    assert_eq!(first, second, "JSON differs between runs");
    let (code, _) = catgrp(&["roundtrip", fixture("trivial_xmod.cg").to_str().unwrap(), "T"]);
    assert_eq!(code, 0);
}
