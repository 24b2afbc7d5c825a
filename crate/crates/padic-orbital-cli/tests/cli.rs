use std::process::{Command, Output};

use padic_orbital::grid::EvalReport;
use padic_orbital_cli::to_json;

fn orbital(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbital"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn quick_verify_passes() {
    let o = orbital(&["verify", "--p", "3", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("0 failures"));
}

#[test]
fn perturbed_verify_fails_and_lists_ten() {
    let o = orbital(&["verify", "--p", "3", "--quick", "--perturb"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("points failed; first 10:"), "{err}");
    assert_eq!(err.lines().filter(|l| l.starts_with("  ")).count(), 10);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["eval", "--p", "9"][..],
        &["eval", "--p", "2"],
        &["eval", "--p", "5", "--epsilon", "4"],
        &["eval", "--p", "5", "--tol", "0.5"],
        &["eval", "--p", "5", "--precision", "4"],
        &["eval", "--p", "5", "--s", "0"],
        &["eval", "--p", "5", "--s", "x*p^2"],
        &["verify", "--regime", "nowhere"],
        &["sums", "gamma", "--chi", "nu-oops"],
        &["frobnicate"],
    ] {
        let o = orbital(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn eval_reports_the_close_regime() {
    let o = orbital(&[
        "eval", "--p", "5", "--theta", "1", "--beta", "1", "--thetap", "1", "--s", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("regime  close"));
    assert!(out.contains("c0      0.000000000000"));
    assert!(out.contains("value   2.000000000000+0.000000000000i"));
}

#[test]
fn json_round_trip_is_byte_identical() {
    let o = orbital(&["verify", "--p", "3", "--quick", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let reports: Vec<EvalReport> = serde_json::from_str(&text).unwrap();
    assert!(reports.len() > 100);
    assert_eq!(to_json(&reports).unwrap(), text);

    let o = orbital(&[
        "eval", "--p", "7", "--theta", "eps2-pi", "--s", "3*p^-1", "--thetap", "pi", "--format", "json",
    ]);
    let text = stdout(&o);
    let report: EvalReport = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json(&report).unwrap(), text);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--p", "5", "--quick", "--format", "csv"];
    assert_eq!(orbital(&args).stdout, orbital(&args).stdout);
}

#[test]
fn csv_headers_match_golden_files() {
    let o = orbital(&["verify", "--p", "3", "--quick", "--format", "csv"]);
    let first = stdout(&o).lines().next().unwrap().to_string() + "\n";
    assert_eq!(first, include_str!("golden/report_header.csv"));
    let o = orbital(&["table", "--p", "3", "--format", "csv"]);
    let first = stdout(&o).lines().next().unwrap().to_string() + "\n";
    assert_eq!(first, include_str!("golden/table_header.csv"));
}

#[test]
fn bad_shell_filter_keeps_only_ramified_sigma_zero_points() {
    let o = orbital(&["verify", "--p", "7", "--regime", "bad-shell", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<EvalReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r.sigma2, 0);
        assert!(r.regime.is_bad_shell());
        assert!(matches!(r.theta.name().as_str(), "pi" | "eps2-pi"), "{}", r.theta);
    }
}

#[test]
fn table_sweeps_seven_orders_by_seven_classes() {
    let o = orbital(&["table", "--p", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 7 * 7);
    for r in &rows {
        let value = (r[4].parse::<f64>().unwrap(), r[5].parse::<f64>().unwrap());
        let norm = (r[6].parse::<f64>().unwrap(), r[7].parse::<f64>().unwrap());
        let scale: f64 = r[8].parse().unwrap();
        assert!((value.0 - norm.0 * scale).abs() < 1e-12 && (value.1 - norm.1 * scale).abs() < 1e-12);
        match r[3].as_str() {
            "far-vanishing" => assert_eq!(norm, (0.0, 0.0)),
            // γ has modulus 1 and the Weyl sum has at most two unimodular terms.
            "far-same-torus" => assert!((norm.0.hypot(norm.1)) <= 2.0 + 1e-9),
            _ => {}
        }
    }
}

#[test]
fn sums_match_direct_values() {
    let val = |args: &[&str]| -> (f64, f64) {
        let mut a = vec!["sums"];
        a.extend_from_slice(args);
        a.extend_from_slice(&["--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&orbital(&a))).unwrap();
        (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
    };
    let close = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9;
    assert!(close(val(&["gauss", "--p", "5"]), (1.0, 0.0)));
    let k = 2.0 + 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos();
    assert!(close(val(&["kloosterman", "--p", "5", "--xi", "1"]), (k, 0.0)));
    assert!(close(
        val(&["gamma", "--chi", "nu-half-sgn-pi", "--p", "7"]),
        (0.0, -1.0)
    ));
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("orbital-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eval.csv");
    let o = orbital(&["eval", "--p", "3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("p,phi_depth,"));
    std::fs::remove_dir_all(dir).unwrap();
}
