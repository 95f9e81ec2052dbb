use std::process::{Command, Output};

use serde_json::Value;

fn wigner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wigner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = wigner(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn number(v: &Value, key: &str) -> f64 {
    v[key]
        .as_f64()
        .unwrap_or_else(|| panic!("missing {key} in {v}"))
}

#[test]
fn eval_reaches_quarter_margin_at_reference_angles() {
    let v = json(&[
        "eval",
        "--inequality",
        "wigner-nqm",
        "--angles",
        "2.0944,0,1.0472",
    ]);
    assert!((number(&v, "margin") - 0.25).abs() < 1e-4);
    assert_eq!(v["violated"], Value::Bool(true));
    let deg = json(&[
        "eval",
        "--inequality",
        "wigner-nqm",
        "--angles",
        "120,0,60",
        "--degrees",
    ]);
    assert!((number(&deg, "margin") - 0.25).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(wigner(&["eval"]).status.code(), Some(1));
    assert_eq!(
        wigner(&["eval", "--inequality", "wigner-nqm"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        wigner(&["eval", "--inequality", "nope", "--angles", "0,0,0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        wigner(&["scan", "--inequality", "wigner-nqm", "--bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        wigner(&[
            "eval",
            "--inequality",
            "wigner-ps",
            "--angles",
            "1,0,0",
            "--channel",
            "h-gg"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        wigner(&["max-violation", "--inequality", "trig-pi0", "--threshold"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(wigner(&[]).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_cleanly() {
    assert_eq!(wigner(&["--help"]).status.code(), Some(0));
    assert_eq!(wigner(&["--version"]).status.code(), Some(0));
    assert_eq!(wigner(&["scan", "--help"]).status.code(), Some(0));
}

#[test]
fn numerical_failure_exits_with_two() {
    let out = wigner(&[
        "correction-sweep",
        "--ladder",
        "1e-9,1e-7,3",
        "--quadrature",
        "16x32",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn scan_csv_header_and_default_grid() {
    let out = wigner(&["scan", "--inequality", "wigner-nqm", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("theta_a,theta_b,theta_c,lhs,rhs,margin,violated")
    );
    assert_eq!(lines.count(), 361 * 361);
}

#[test]
fn sweep_csv_header_and_fit_summary() {
    let out = wigner(&[
        "correction-sweep",
        "--format",
        "csv",
        "--quadrature",
        "32x64",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("p_over_M,delta_w"));
    assert_eq!(text.lines().count(), 6);
    assert!(String::from_utf8_lossy(&out.stderr).contains("slope"));
}

#[test]
fn max_violation_of_pion_form() {
    let v = json(&["max-violation", "--inequality", "trig-pi0"]);
    assert!((number(&v, "margin") - 0.25).abs() < 1e-9);
    assert!((number(&v, "theta_ab") - std::f64::consts::FRAC_PI_3).abs() < 1e-4);
}

#[test]
fn discrepancies_are_flagged() {
    let v = json(&["max-violation", "--inequality", "trig-higgs"]);
    assert!((number(&v, "margin") + 0.25).abs() < 1e-6);
    assert_eq!(v["discrepancy"]["reproduces_reference"], Value::Bool(false));
    let t = json(&[
        "max-violation",
        "--inequality",
        "trig-ab",
        "--threshold",
        "--ratio-tol",
        "1e-4",
    ]);
    assert!((number(&t, "threshold") - 5f64.sqrt()).abs() < 0.01);
    assert_eq!(t["discrepancy"]["reproduces_reference"], Value::Bool(false));
    assert!((number(&t["discrepancy"], "reference") - 2f64.sqrt()).abs() < 1e-15);
}

#[test]
fn photon_weights() {
    let v = json(&["weights"]);
    let pi = std::f64::consts::PI;
    assert!((number(&v, "corr") - 15.0 / (16.0 * pi)).abs() < 1e-12);
    assert!((number(&v, "anti") - 5.0 / (16.0 * pi)).abs() < 1e-12);
    assert!((number(&v, "ratio") - 3.0).abs() < 1e-12);
}

#[test]
fn hidden_variable_check() {
    let out = wigner(&[
        "lhv-check",
        "--mode",
        "anti",
        "--sweep",
        "10000",
        "--seed",
        "42",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains(">= 0"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(number(&v, "min_margin") >= 0.0);
    let f = json(&[
        "lhv-check",
        "--sweep",
        "10",
        "--mode",
        "corr",
        "--targets",
        "0.375,0.125,0.125",
    ]);
    assert_eq!(f["feasibility"]["feasible"], Value::Bool(false));
    assert_eq!(f["feasibility"]["certificate_valid"], Value::Bool(true));
}

#[test]
fn json_numbers_have_seventeen_digits() {
    let out = wigner(&["weights"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let body = text.trim().trim_start_matches('{').trim_end_matches('}');
    for field in body.split(',') {
        let (_, value) = field.split_once(':').unwrap();
        let mantissa = value.split('e').next().unwrap();
        let digits = mantissa.chars().filter(char::is_ascii_digit).count();
        assert_eq!(digits, 17, "{value}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("wigner-cli-{}.json", std::process::id()));
    let stdout = wigner(&["max-violation", "--inequality", "wigner-ps"]).stdout;
    let status = wigner(&[
        "max-violation",
        "--inequality",
        "wigner-ps",
        "--output",
        path.to_str().unwrap(),
    ])
    .status;
    assert!(status.success());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn formal_and_correlator_inequalities() {
    let v = json(&[
        "eval",
        "--inequality",
        "wigner-photon-s",
        "--probabilities",
        "0.5,0.1,0.1",
    ]);
    assert_eq!(v["violated"], Value::Bool(true));
    let chsh = json(&[
        "eval",
        "--inequality",
        "chsh-classic",
        "--angles",
        "0,45,-45,90",
        "--degrees",
    ]);
    assert!((number(&chsh, "lhs") - 2.0 * 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn selftest_passes() {
    let v = json(&["selftest"]);
    assert_eq!(v["passed"], Value::Bool(true));
}
