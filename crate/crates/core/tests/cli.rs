//! End-to-end runs of the `opct` binary: exit codes and written artifacts.

use std::path::Path;
use std::process::{Command, Output};

fn opct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opct")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn list_claims_prints_every_id() {
    let out = opct(&["list-claims"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for c in opct::harness::list_claims() {
        assert!(text.contains(&c.id), "missing {}", c.id);
    }
    assert!(text.contains(opct::harness::RECORDED_ONLY));
}

#[test]
fn passing_check_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("gap.json");
    let svg = dir.path().join("gap.svg");
    let out = opct(&[
        "claim-check",
        "--id",
        "littlegt_gap",
        "--p",
        "4",
        "--q",
        "3",
        "--out",
        json.to_str().unwrap(),
        "--plot",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let report: opct::harness::ScalingReport = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(report.pass);
    assert!((report.expected - 1.0 / 24.0).abs() < 1e-12);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn csv_report_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("cube.csv");
    let out = opct(&["claim-check", "--id", "c0_rncap_quotient", "--dims", "2,4,8", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,value,stderr"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn pre_asymptotic_ladder_fails() {
    // At n ≤ 3 the sharpness profile has not reached its limiting slope.
    let out = opct(&["claim-check", "--id", "cotype_sharpness", "--dims", "1,2,3", "--tol", "0"]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn recorded_claim_exits_two() {
    let out = opct(&["claim-check", "--id", "kwapien"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains(opct::harness::RECORDED_ONLY));
}

#[test]
fn errors_exit_three() {
    assert_eq!(code(&opct(&["claim-check", "--id", "no_such_claim"])), 3);
    assert_eq!(code(&opct(&["claim-check", "--id", "littlegt_gap", "--dims", "8,4,16"])), 3);
    assert_eq!(code(&opct(&["claim-check", "--id", "littlegt_gap", "--p", "2", "--q", "4"])), 3);
    let out = opct(&["claim-check", "--id", "littlegt_gap", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn norm_subcommand_reports_certainty() {
    let element = r#"{"m":1,"shape":"linear","n":2,"blocks":[{"rows":1,"cols":1,"re":[1.0],"im":[0.0]},{"rows":1,"cols":1,"re":[1.0],"im":[0.0]}]}"#;
    let out = opct(&["norm", "--space", r#"{"family":"row","dim":2}"#, "--element", element]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["value"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["certainty"], "exact");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, element).unwrap();
    let out = opct(&["norm", "--space", r#"{"family":"rp","dim":2,"p":3}"#, "--element", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = opct(&["norm", "--space", r#"{"family":"oh","dim":3}"#, "--element", element]);
    assert_eq!(code(&out), 3);
}

fn sweep(dir: &Path, body: &str) -> Output {
    let cfg = dir.join("sweep.json");
    std::fs::write(&cfg, body).unwrap();
    opct(&["sweep", "--config", cfg.to_str().unwrap(), "--out-dir", dir.to_str().unwrap()])
}

#[test]
fn sweep_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = sweep(dir.path(), r#"[{"claim_id":"cube_witness"},{"claim_id":"c0_rncap_quotient","dims":[2,4,8]}]"#);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(dir.path().join("cube_witness.json").exists());
    assert!(dir.path().join("c0_rncap_quotient.json").exists());

    let out = sweep(dir.path(), r#"[{"claim_id":"cube_witness"},{"claim_id":"kwapien"}]"#);
    assert_eq!(code(&out), 2);

    let out = sweep(dir.path(), r#"{"claim_id":"cube_witness","bogus":1}"#);
    assert_eq!(code(&out), 3);

    let out = sweep(dir.path(), r#"[{"claim_id":"kwapien"},{"claim_id":"nope"}]"#);
    assert_eq!(code(&out), 3);
}

#[test]
fn thread_cap_is_validated() {
    let out =
        Command::new(env!("CARGO_BIN_EXE_opct")).env("OPCT_THREADS", "many").args(["list-claims"]).output().unwrap();
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_opct"))
        .env("OPCT_THREADS", "1")
        .args(["claim-check", "--id", "cube_witness"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}
