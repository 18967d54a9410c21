//! End-to-end checks of the command-line surface and its exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ultrahom"))
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn tower_reports_level_orders() {
    let out = bin().args(["tower", "--max-level", "1"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order 6"), "{text}");
    assert!(text.contains("order 720"), "{text}");
}

#[test]
fn tower_level_zero_only() {
    let out = bin()
        .args(["tower", "--max-level", "0", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let records: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(records[0]["order"], "6");
}

#[test]
fn tower_rejects_level_three() {
    let out = bin().args(["tower", "--max-level", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tower_uses_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["--cache-dir"])
        .arg(dir.path())
        .args(["tower", "--max-level", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("level_1.json").exists());
    // second run loads from cache
    let out = bin()
        .env("ULTRAHOM_CACHE", dir.path())
        .args(["tower", "--max-level", "1", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let records: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(records[1]["cache"], "Loaded");
}

#[test]
fn witness_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = dir.path().join("pairs.json");
    // invert the 3-cycle of S_3
    write(
        &pairs,
        r#"{"pairs": [{"from": [1, 2, 0], "to": [2, 0, 1]}]}"#,
    );
    let cert_path = dir.path().join("cert.json");
    let out = bin()
        .args(["witness", "--level", "0", "--pairs"])
        .arg(&pairs)
        .arg("--output")
        .arg(&cert_path)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert["witness"].as_array().unwrap().len(), 6);
    assert_eq!(cert["verified_equations"], 3);
}

#[test]
fn witness_rejects_order_mismatch_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = dir.path().join("pairs.json");
    // transposition mapped to a 3-cycle cannot extend
    write(
        &pairs,
        r#"{"pairs": [{"from": [1, 0, 2], "to": [1, 2, 0]}]}"#,
    );
    let out = bin()
        .args(["witness", "--level", "0", "--pairs"])
        .arg(&pairs)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("word"), "{err}");
}

#[test]
fn amalgam_degree_eight() {
    let dir = tempfile::tempdir().unwrap();
    let z2 = dir.path().join("z2.json");
    write(&z2, r#"{"order": 2, "table": [[0, 1], [1, 0]]}"#);
    let z4 = dir.path().join("z4.json");
    write(
        &z4,
        r#"{"order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]}"#,
    );
    let embed = dir.path().join("embed.json");
    write(&embed, r#"{"map": [0, 2]}"#);
    let out_path = dir.path().join("amalgam.json");
    let out = bin()
        .args(["amalgam", "--base"])
        .arg(&z2)
        .arg("--left")
        .arg(&z4)
        .arg("--right")
        .arg(&z4)
        .arg("--embed-left")
        .arg(&embed)
        .arg("--embed-right")
        .arg(&embed)
        .arg("--output")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("8 points"), "{text}");
    let data: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(data["degree"], 8);
    assert_eq!(data["intersection"], "Exact");
}

#[test]
fn amalgam_cap_exceeded_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let z2 = dir.path().join("z2.json");
    write(&z2, r#"{"order": 2, "table": [[0, 1], [1, 0]]}"#);
    let z4 = dir.path().join("z4.json");
    write(
        &z4,
        r#"{"order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]}"#,
    );
    let embed = dir.path().join("embed.json");
    write(&embed, r#"{"map": [0, 2]}"#);
    let out = bin()
        .args(["--neumann-cap", "4", "amalgam", "--base"])
        .arg(&z2)
        .arg("--left")
        .arg(&z4)
        .arg("--right")
        .arg(&z4)
        .arg("--embed-left")
        .arg(&embed)
        .arg("--embed-right")
        .arg(&embed)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_single_suite_and_unknown() {
    let out = bin().args(["verify", "ncycle-identity"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("20/20"), "{text}");

    let out = bin().args(["verify", "no-such-suite"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_report_shape() {
    let out = bin()
        .args(["--json", "verify", "q8-automorphism"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports[0]["suite"], "q8-automorphism");
    assert_eq!(reports[0]["passed"], true);
    assert!(reports[0]["cases"].as_array().unwrap().len() >= 2);
}

#[test]
fn verify_report_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = bin()
        .args(["verify", "straight-maximality", "--output"])
        .arg(&report_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let reports: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(reports[0]["suite"], "straight-maximality");
    let sizes = &reports[0]["cases"][1]["actual"];
    assert_eq!(sizes.to_string(), "[2,4,6]");
}

#[test]
fn check_group_answers() {
    let dir = tempfile::tempdir().unwrap();
    let z2 = dir.path().join("z2.json");
    write(&z2, r#"{"order": 2, "table": [[0, 1], [1, 0]]}"#);
    let out = bin()
        .args(["--json", "check-group"])
        .arg(&z2)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["inner_ultrahomogeneous"], true);

    let z4 = dir.path().join("z4.json");
    write(
        &z4,
        r#"{"order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]}"#,
    );
    let out = bin()
        .args(["--json", "check-group"])
        .arg(&z4)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["inner_ultrahomogeneous"], false);
    assert!(v["counterexample"].is_object());
}

#[test]
fn malformed_input_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    write(&bad, "{this is not json");
    let out = bin().args(["check-group"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
