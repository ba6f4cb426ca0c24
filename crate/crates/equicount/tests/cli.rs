//! End-to-end checks of the `equicount` binary: exit codes, output files and
//! the CSV contract.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equicount"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("equicount-cli-{tag}"));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn list_experiments() {
    let out = bin().arg("--list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("mertens_K"));
    assert!(text.contains("relheight_Q"));
    assert!(text.contains("herm_orbit"));
}

#[test]
fn run_mertens_k_end_to_end() {
    let dir = tmp_dir("mertens-k");
    let cfg = dir.join("config.json");
    std::fs::write(
        &cfg,
        r#"{
            "experiment": "mertens_K",
            "d_k": -4,
            "s_schedule": [25, 50, 100],
            "tolerance": 0.1
        }"#,
    )
    .unwrap();
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap(), "--threads", "2"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("mertens_K.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "experiment,s,count,theory_constant,theory_value,ratio,flags"
    );
    assert_eq!(lines.count(), 3);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("mertens_K.json")).unwrap())
            .unwrap();
    assert_eq!(json["config"]["d_k"], -4);
    assert!(json["passed"].as_bool().unwrap());
    // byte-identical reruns modulo the timestamp header
    let out2 = bin()
        .args(["--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out2.status.success());
    let csv2 = std::fs::read_to_string(dir.join("mertens_K.csv")).unwrap();
    assert_eq!(csv, csv2);
}

#[test]
fn malformed_config_exits_2_without_output() {
    let dir = tmp_dir("malformed");
    let cfg = dir.join("bad.json");
    std::fs::write(&cfg, r#"{"experiment": "mertens_K""#).unwrap();
    let out_dir = dir.join("never-created");
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_dir.exists(), "no partial output on invalid config");
}

#[test]
fn unknown_experiment_exits_2() {
    let dir = tmp_dir("unknown");
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"experiment": "nope", "s_schedule": [1]}"#).unwrap();
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_failure_exits_1() {
    let dir = tmp_dir("tolfail");
    let cfg = dir.join("cfg.json");
    // an impossible tolerance on a perfectly healthy experiment
    std::fs::write(
        &cfg,
        r#"{"experiment": "mertens_rational", "s_schedule": [10, 20], "tolerance": 0.000001}"#,
    )
    .unwrap();
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // outputs still written for inspection
    assert!(dir.join("mertens_rational.csv").exists());
}

#[test]
fn missing_config_flag_exits_2() {
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
