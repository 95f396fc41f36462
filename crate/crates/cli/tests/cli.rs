use std::process::{Command, Output};

use serde_json::Value;

fn entcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = entcat(&full);
    let value = serde_json::from_str(&stdout(&out)).expect("valid json");
    (value, out.status.code().unwrap())
}

fn close(v: &Value, expected: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - expected).abs() <= tol
}

#[test]
fn prob_reports_baseline() {
    let out = entcat(&["prob", "--alpha", "0.85", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0.555000"), "{text}");
    assert!(text.contains("incommensurate: true"), "{text}");

    let (v, code) = json(&["prob", "--alpha", "0.85", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(close(&v["p_baseline"], 0.555, 1e-12));
    assert_eq!(v["deterministic"], false);
}

#[test]
fn catalyst_closed_form() {
    let (v, code) = json(&["catalyst", "--alpha", "0.99", "--n", "6"]);
    assert_eq!(code, 0);
    assert!(close(&v["c_opt"], 0.838_564, 1e-6));
    assert!(close(&v["p"], 0.362_497, 1e-6));
    assert_eq!(v["p"], v["p_catalyzed"]);
    assert_eq!(v["method"], "closed_form");
}

#[test]
fn catalyst_search_matches_closed_form_at_rank_two() {
    let (exact, _) = json(&["catalyst", "--alpha", "0.8", "--n", "2"]);
    let (found, code) = json(&["catalyst", "--alpha", "0.8", "--n", "2", "--search"]);
    assert_eq!(code, 0);
    assert_eq!(found["method"], "search");
    let gap = exact["p"].as_f64().unwrap() - found["p"].as_f64().unwrap();
    assert!((0.0..=1e-6).contains(&gap), "gap {gap}");
}

#[test]
fn higher_rank_catalyst_does_better() {
    let (v, code) = json(&["catalyst", "--alpha", "0.8", "--n", "2", "--rank", "3"]);
    assert_eq!(code, 0);
    assert!(v["p"].as_f64().unwrap() >= 0.906_667);
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 3);
}

#[test]
fn deterministic_regime_skips_search() {
    let (v, code) = json(&["catalyst", "--alpha", "0.7", "--n", "2", "--search"]);
    assert_eq!(code, 0);
    assert_eq!(v["deterministic"], true);
    assert!(close(&v["p"], 1.0, 0.0));
}

#[test]
fn starved_search_exits_with_warning() {
    let (v, code) = json(&[
        "catalyst", "--alpha", "0.8", "--n", "2", "--rank", "3",
        "--max-iterations", "5", "--restarts", "1",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["converged"], false);
    assert!(v["warning"].is_string());
}

#[test]
fn domain_errors_exit_two() {
    for args in [
        &["prob", "--alpha", "1.2", "--n", "2"][..],
        &["prob", "--alpha", "0.8", "--n", "0"],
        &["catalyst", "--alpha", "0.8", "--n", "2", "--rank", "1"],
        &["strategy", "--alpha", "0.99", "--n", "5", "--m", "2"],
        &["strategy", "--alpha", "0.99", "--n", "6", "--m", "7"],
        &["sweep", "--mode", "boost", "--steps", "0"],
        &["sweep", "--mode", "ratios", "--n", "2"],
        &["prob", "--alpha", "0.8", "--n", "2", "--format", "csv"],
    ] {
        let out = entcat(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn usage_error_exits_two() {
    assert_eq!(entcat(&["catalyst", "--n", "2"]).status.code(), Some(2));
    assert_eq!(entcat(&["unknown"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.txt");
    let out = entcat(&["prob", "--alpha", "0.8", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("boost.csv");
    let out = entcat(&[
        "sweep", "--mode", "boost", "--steps", "5", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,n,boost"));
    assert_eq!(lines.count(), 5 * 5);
}

#[test]
fn ratio_sweep_csv() {
    let out = entcat(&[
        "sweep", "--mode", "ratios", "--alpha", "0.85", "--n", "2",
        "--c-from", "0.5", "--c-to", "1.0", "--steps", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "alpha,n,c,r2,r3,r4,min");
    assert_eq!(rows.len(), 4);
    let last: Vec<&str> = rows[3].split(',').collect();
    assert_eq!(last[2], "1.00000");
    assert_eq!(last[4], "inf");
    for row in &rows[1..] {
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        let min = cells[3].min(cells[4]).min(cells[5]);
        assert_eq!(cells[6], min.min(1.0));
    }
}

#[test]
fn strategy_comparison() {
    let out = entcat(&["strategy", "--alpha", "0.99", "--n", "6", "--m", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("s2 0.065223 [(3,3)]"), "{text}");

    let (v, code) = json(&["strategy", "--alpha", "0.99", "--n", "6", "--m", "2"]);
    assert_eq!(code, 0);
    assert!(close(&v["pairwise"]["distribution"][1][1], 0.391, 5e-4));
    assert!(close(&v["strategy1_exact_m_no_coefficient"], 0.034, 5e-4));
    assert!(close(&v["strategy2_best"]["joint_probability"], 0.065, 5e-4));
    assert_eq!(v["recommended"], "pairwise");

    let csv = stdout(&entcat(&[
        "strategy", "--alpha", "0.99", "--n", "6", "--m", "2", "--format", "csv",
    ]));
    let total: f64 = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn verify_passes() {
    let out = entcat(&["verify", "--grid-density", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("overall: pass"));

    let (v, _) = json(&["verify", "--grid-density", "4"]);
    assert!(v["checks"].as_array().unwrap().len() >= 9);
}
