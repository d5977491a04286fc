//! End-to-end checks of the command-line surface: exit codes, output
//! formats and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn orlicz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orlicz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn classify_psi2_delta2_holds() {
    let out = orlicz(&["classify", "--psi", "psi2", "--condition", "delta2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"verdict\":\"holds-on-grid\""), "{text}");
    assert!(text.contains("\"condition\":\"delta2\""));
}

#[test]
fn classify_writes_record_to_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = orlicz(&[
        "classify",
        "--psi",
        "spliced-logsq",
        "--condition",
        "delta2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let path = dir.path().join("classify-spliced-logsq-delta2.json");
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.contains("fails-on-grid"));
}

#[test]
fn norm_of_constant_one_under_psi2() {
    let out = orlicz(&["norm", "--f", "const:1", "--psi", "psi2", "--measure", "haar"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1.201122");
}

#[test]
fn norm_of_step_matches_closed_form() {
    let out = orlicz(&["norm", "--f", "step:3:0.125", "--psi", "exp", "--size", "0.01"]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    let expect = 3.0 / (8.0f64.ln_1p());
    assert!((value - expect).abs() < 1e-5, "{value} vs {expect}");
}

#[test]
fn domain_errors_exit_2() {
    let out = orlicz(&["classify", "--psi", "gaussian", "--condition", "delta2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = orlicz(&["norm", "--f", "const:1", "--psi", "power:0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_64() {
    let out = orlicz(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(64));
    let out = orlicz(&["classify", "--psi", "psi2", "--condition", "delta2", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    let out = orlicz(&["reproduce", "no-such-experiment"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn carleson_profile_emits_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = orlicz(&[
        "carleson-profile",
        "--symbol",
        "identity",
        "--size",
        "0.001",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("profile-identity.csv")).unwrap();
    assert!(csv.starts_with("h,rho,K"));
    assert!(csv.lines().count() > 30);
    // the uniform measure has rho(h) = h/pi: slope 1 is reported
    assert!(stdout(&out).contains("slope 1.00"));
}

#[test]
fn reproduce_outputs_are_byte_identical_across_runs() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    let run = |dir: &Path| {
        let out = orlicz(&[
            "reproduce",
            "blaschke",
            "--seed",
            "7",
            "--size",
            "0.1",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    };
    run(dir1.path());
    run(dir2.path());
    for name in ["blaschke-samples.csv", "blaschke-levels.csv"] {
        let a = std::fs::read(dir1.path().join(name)).unwrap();
        let b = std::fs::read(dir2.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn reproduce_seed_changes_sampled_artifacts() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    for (dir, seed) in [(&dir1, "7"), (&dir2, "8")] {
        let out = orlicz(&[
            "reproduce",
            "blaschke",
            "--seed",
            seed,
            "--size",
            "0.1",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(dir1.path().join("blaschke-samples.csv")).unwrap();
    let b = std::fs::read(dir2.path().join("blaschke-samples.csv")).unwrap();
    assert_ne!(a, b, "different seeds must sample different points");
}

#[test]
fn reproduce_counterexample_2_emits_window_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = orlicz(&[
        "reproduce",
        "counterexample-2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = std::fs::read_to_string(dir.path().join("counterexample-2-windows.csv")).unwrap();
    // mass/h column grows like n: check the first rows read 1, 2, 3
    let rows: Vec<&str> = table.lines().skip(1).take(3).collect();
    for (i, row) in rows.iter().enumerate() {
        let last: f64 = row.split(',').next_back().unwrap().parse().unwrap();
        assert!((last - (i + 1) as f64).abs() < 1e-6, "row {i}: {last}");
    }
}

#[test]
fn reproduce_counterexample_3_verifies_tail_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let out = orlicz(&[
        "reproduce",
        "counterexample-3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("tail bounds verified"));
}

#[test]
fn diagnose_small_constant_symbol() {
    let dir = tempfile::tempdir().unwrap();
    let out = orlicz(&[
        "diagnose",
        "--symbol",
        "constant:0.5",
        "--psi",
        "psi2",
        "--size",
        "0.01",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json = std::fs::read_to_string(dir.path().join("diagnostic-constant-psi2.json")).unwrap();
    for label in ["\"R\"", "\"K\"", "\"R0\"", "\"K0\"", "\"W\"", "\"OB1\"", "\"OB2\"", "\"OB3\"", "\"OB4\"", "\"MC\""] {
        assert!(json.contains(label), "missing {label}");
    }
}
