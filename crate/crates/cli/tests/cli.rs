//! End-to-end harness tests driving the built binary.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mircan"))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn read_report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Zero out the timing fields so two reports can be compared bytewise.
fn strip_timing(v: &mut serde_json::Value) {
    for check in v["checks"].as_array_mut().unwrap() {
        check["elapsed_ms"] = 0.into();
    }
}

#[test]
fn default_small_run_passes() {
    let out = std::env::temp_dir().join("mircan_report_default.json");
    let status = bin()
        .args(["verify", "--suite", "ring", "--suite", "theta", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report = read_report(&out);
    assert_eq!(report["failed"], 0);
    assert!(report["passed"].as_u64().unwrap() > 0);
    // every check appears exactly once
    let ids: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    let mut dedup = ids.clone();
    dedup.dedup();
    assert_eq!(ids, dedup, "duplicate check ids");
    assert!(ids.windows(2).all(|w| w[0] <= w[1]), "ids not sorted");
}

#[test]
fn zero_tolerance_fails_numeric_checks() {
    let out = std::env::temp_dir().join("mircan_report_tol0.json");
    let status = bin()
        .args(["verify", "--suite", "theta", "--tol", "0", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(!status.success());
    let report = read_report(&out);
    assert!(report["failed"].as_u64().unwrap() > 0);
    // exact checks still pass
    let jacobi = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "theta.jacobi_identity")
        .unwrap();
    assert_eq!(jacobi["status"], "pass");
}

#[test]
fn malformed_config_is_a_startup_error() {
    let status = bin()
        .args(["verify", "--tau", "not-a-number"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let status = bin()
        .args(["verify", "--k", "0", "--family", "8k"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let out1 = std::env::temp_dir().join("mircan_det_1.json");
    let out2 = std::env::temp_dir().join("mircan_det_2.json");
    for out in [&out1, &out2] {
        let status = bin()
            .args([
                "verify", "--suite", "ring", "--suite", "cancel", "--seed", "7", "--out",
            ])
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let mut a = read_report(&out1);
    let mut b = read_report(&out2);
    // the configs echo different out paths; normalize them too
    a["config"]["out_path"] = "".into();
    b["config"]["out_path"] = "".into();
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn golden_comparison_passes_against_repo() {
    let out = std::env::temp_dir().join("mircan_report_golden.json");
    let status = bin()
        .args(["verify", "--golden-dir"])
        .arg(golden_dir())
        .args(["--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report = read_report(&out);
    let goldens = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["id"].as_str().unwrap().contains(".golden."))
        .count();
    assert_eq!(goldens, 12);
}

#[test]
fn missing_golden_dir_is_a_startup_error() {
    let status = bin()
        .args([
            "verify",
            "--suite",
            "ring",
            "--golden-dir",
            "/nonexistent/golden",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn emit_golden_populates_a_fresh_directory() {
    let dir = std::env::temp_dir().join("mircan_fresh_golden");
    let _ = std::fs::remove_dir_all(&dir);
    let out = std::env::temp_dir().join("mircan_report_emit.json");
    let status = bin()
        .args([
            "verify",
            "--suite",
            "theta",
            "--emit-golden",
            "--golden-dir",
        ])
        .arg(&dir)
        .args(["--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    // theta-owned artifacts are present and match the repository copies
    for name in [
        "theta1_const.txt",
        "theta2_const.txt",
        "theta3_const.txt",
        "theta_prime_over_pi.txt",
        "delta1.txt",
        "epsilon1.txt",
        "delta2.txt",
        "epsilon2.txt",
    ] {
        let fresh = std::fs::read_to_string(dir.join(name)).unwrap();
        let committed = std::fs::read_to_string(golden_dir().join(name)).unwrap();
        assert_eq!(fresh, committed, "{name}");
    }
}

#[test]
fn tables_command_emits_integral_artifacts() {
    let dir = std::env::temp_dir().join("mircan_tables_out");
    let _ = std::fs::remove_dir_all(&dir);
    let status = bin()
        .args(["tables", "--k", "1", "--family", "8k4", "--out"])
        .arg(&dir)
        .status()
        .unwrap();
    assert!(status.success());
    let br: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("br_k1_8k4.json")).unwrap())
            .unwrap();
    assert_eq!(br["rows"][0][0], "-1");
    assert_eq!(br["rows"][1][0], "72");
    assert_eq!(br["rows"][1][1], "-1");
    let cr = std::fs::read_to_string(dir.join("cr_k1_8k4.txt")).unwrap();
    assert!(cr.contains("# C_1"));
    assert!(cr.contains("-1/1"));
    // k = 2 produces three integral rows
    let status = bin()
        .args(["tables", "--k", "2", "--family", "8k4", "--out"])
        .arg(&dir)
        .status()
        .unwrap();
    assert!(status.success());
    let br2: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("br_k2_8k4.json")).unwrap())
            .unwrap();
    assert_eq!(br2["rows"].as_array().unwrap().len(), 3);
    assert_eq!(br2["rows"][2][0], "-3720");
}
