use std::process::{Command, Output};

use gammalcm::ineq::CheckResult;
use gammalcm_cli::report::{Report, ReportEntry};
use proptest::prelude::*;

fn gammalcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammalcm")).args(args).output().expect("run gammalcm")
}

fn report_from(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("stdout is a report")
}

#[test]
fn thm2_suite_reports_300_inequality_checks() {
    let out = gammalcm(&["verify", "--suite", "thm2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_from(&out);
    assert_eq!(r.suite, "thm2");
    let n = r
        .results
        .iter()
        .filter(|e| matches!(e, ReportEntry::Check { check, .. } if check.name == "thm2_ineq" && check.holds))
        .count();
    assert_eq!(n, 300);
    assert_eq!(r.summary.failed, 0);
}

#[test]
fn aux_suite_contains_exact_spot_values() {
    let out = gammalcm(&["verify", "--suite", "aux"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_from(&out);
    let find = |name: &str| {
        r.results
            .iter()
            .find_map(|e| match e {
                ReportEntry::Check { check, .. } if check.name == name => Some(check.clone()),
                _ => None,
            })
            .unwrap_or_else(|| panic!("{name} missing"))
    };
    assert_eq!(find("qcub_at_one_third").input("target"), Some(-2.0 / 3.0));
    assert_eq!(find("hpoly_at_eight_sevenths").input("target"), Some(-404759.0 / 117649.0));
}

#[test]
fn exit_codes() {
    assert_eq!(gammalcm(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(gammalcm(&["verify", "--suite", "fault"]).status.code(), Some(1));
    assert_eq!(gammalcm(&["verify", "--suite", "thm3"]).status.code(), Some(0));
    assert_eq!(gammalcm(&["verify", "--suite", "thm1", "--grid-points", "1"]).status.code(), Some(2));
    assert_eq!(gammalcm(&["scan", "--alpha", "0:1", "--y", "0:1:0.5"]).status.code(), Some(2));
    assert_eq!(gammalcm(&["scan", "--alpha", "0:1:-0.5", "--y", "0:1:0.5"]).status.code(), Some(2));
    assert_eq!(gammalcm(&["scan", "--alpha", "0:1:0.5", "--y", "0:0:1"]).status.code(), Some(2));
    assert_eq!(gammalcm(&[]).status.code(), Some(2));
}

#[test]
fn fault_report_counts_match_exit_code() {
    let out = gammalcm(&["verify", "--suite", "fault"]);
    let r = report_from(&out);
    assert_eq!(r.summary.failed, 2);
    assert_eq!(r.summary.total, r.summary.passed + r.summary.failed + r.summary.undecided);
}

#[test]
fn reports_round_trip() {
    for suite in ["thm1", "thm3", "ball", "fault"] {
        let out = gammalcm(&["verify", "--suite", suite]);
        let text = String::from_utf8(out.stdout).unwrap();
        let r: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&r.to_json()).unwrap(), r, "{suite}");
        assert_eq!(r.to_json() + "\n", text, "{suite}");
    }
}

#[test]
fn scan_grid_and_reference_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let out = gammalcm(&[
        "scan", "--alpha", "0:2:0.25", "--y", "0:1:0.5", "--kmax", "6", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(!csv.contains('\r'));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("alpha,y,classification"));
    let rows: Vec<(f64, f64, String)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].to_string())
        })
        .collect();
    assert_eq!(rows.len(), 27);
    // y-major, then alpha
    assert_eq!((rows[0].0, rows[0].1), (0.0, 0.0));
    assert_eq!((rows[1].0, rows[1].1), (0.25, 0.0));
    assert_eq!((rows[9].0, rows[9].1), (0.0, 0.5));
    let class = |a: f64, y: f64| rows.iter().find(|r| r.0 == a && r.1 == y).unwrap().2.clone();
    assert_eq!(class(2.0, 0.0), "LCM");
    assert_eq!(class(0.0, 0.0), "RECIPROCAL");
    // the JSON summary goes to standard error
    let summary: Report = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary.summary.total, 27);
}

#[test]
fn scan_csv_is_byte_identical_across_runs() {
    let args = ["scan", "--alpha", "-1:2:0.5", "--y", "-0.5:1:0.5", "--kmax", "4", "--format", "csv", "--grid-points", "60"];
    let a = gammalcm(&args);
    let b = gammalcm(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_csv_has_one_row_per_result() {
    let out = gammalcm(&["verify", "--suite", "thm3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "kind,name,status,margin");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.starts_with("surface,verify_thm3,passed")));
}

proptest! {
    #[test]
    fn check_entries_round_trip(lhs in -1e300f64..1e300, rhs in -1e300f64..1e300, x in proptest::num::f64::NORMAL, name in "[a-z_]{1,12}") {
        let c = CheckResult::from_margins(&name, vec![("x".to_string(), x)], lhs, rhs, &[rhs - lhs], 0.0);
        let r = Report::new("prop", vec![ReportEntry::check(c)]);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        prop_assert_eq!(back, r);
    }
}
