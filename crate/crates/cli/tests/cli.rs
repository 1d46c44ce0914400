use std::process::Command;

fn aomoto(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_aomoto"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_all_passes_on_one_instance() {
    let out = aomoto(&["verify", "all", "--m", "1,1", "--k", "2"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], serde_json::json!(true));
    let reports = report["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["pass"] == serde_json::json!(true)));
}

#[test]
fn cg_multiplicity_of_the_trivial_weight() {
    let out = aomoto(&["sl2", "cg", "--m", "1,1", "--p", "0"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["multiplicity"], serde_json::json!(1));
}

#[test]
fn resonant_edges_of_the_two_point_arrangement() {
    let out = aomoto(&["arr", "resonant", "--m", "1,2", "--k", "2"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let edges = report["resonant"].as_array().unwrap();
    assert_eq!(edges.len(), 1);
    assert_eq!(edges[0]["hyperplanes"], serde_json::json!([0, 1, 3]));
    assert_eq!(edges[0]["weight"], serde_json::json!("0"));
}

#[test]
fn cached_rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "strata",
        "total",
        "--m",
        "1,2",
        "--k",
        "2",
        "--kappa",
        "91/5",
        "--cache-dir",
        dir.path().to_str().unwrap(),
    ];
    let first = aomoto(&args);
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = aomoto(&args);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    let unknown = aomoto(&["arr", "flats", "--m", "1", "--bogus"]);
    assert_eq!(unknown.status.code(), Some(2));
    let zero = aomoto(&["arr", "flats", "--m", "0", "--k", "1"]);
    assert_eq!(zero.status.code(), Some(2));
    let pinned_z = aomoto(&["verify", "iso", "--m", "1", "--k", "1", "--z", "3"]);
    assert_eq!(pinned_z.status.code(), Some(2));
}
