//! End-to-end checks of the built binary: output determinism, formats,
//! config-file precedence and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hydroshift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn spectrum_csv_is_deterministic() {
    let args = [
        "--command",
        "spectrum",
        "--n-max",
        "3",
        "--potential",
        "quadratic",
        "--lambda",
        "0.37",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    assert!(text.starts_with("n,l,j,m,E_fine_Ry,dE_Ry,E_total_Ry\n"));
    // n = 1..3 shells hold 2 + 8 + 18 states.
    assert_eq!(text.lines().count(), 1 + 28);
}

#[test]
fn json_output_parses() {
    let out = run(&[
        "--command",
        "shift",
        "--n-max",
        "2",
        "--potential",
        "lj",
        "--d",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["columns"][4], "dE_Ry");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    // Ground state: -(a0/d)^3 = -1e-3 at d = 10.
    assert_eq!(rows[0][4].as_f64().unwrap(), -1e-3);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join("hydroshift-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(
        &path,
        "# base run\ncommand = shift\npotential = quadratic\nlambda = 1.0\nn-max = 1\n",
    )
    .unwrap();
    let base = run(&["--config", path.to_str().unwrap()]);
    assert_eq!(base.status.code(), Some(0));
    // Flag overrides the file value; n=1 quadratic shift scales with lambda.
    let scaled = run(&["--config", path.to_str().unwrap(), "--lambda", "2.0"]);
    assert_eq!(scaled.status.code(), Some(0));
    let get = |o: &Output| -> f64 {
        stdout(o)
            .lines()
            .nth(1)
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    assert_eq!(2.0 * get(&base), get(&scaled));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&[]).status.code(), Some(1)); // no command
    assert_eq!(run(&["--command", "frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["--command", "spectrum", "--n-min", "3", "--n-max", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["--command", "shift", "--n-max", "2"]).status.code(),
        Some(1) // shift needs a potential
    );
    assert_eq!(
        run(&["--command", "scan", "--potential", "quadratic", "--scan-var", "lambda",
              "--scan-min", "0", "--scan-max", "1", "--scan-step", "-1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_passes_and_detects_injected_fault() {
    let clean = run(&["--command", "verify", "--n-max", "2", "--Z", "1"]);
    assert_eq!(clean.status.code(), Some(0), "{}", stdout(&clean));
    assert!(stdout(&clean).contains("pass"));
    assert!(!stdout(&clean).contains("fail"));

    let faulty = run(&[
        "--command",
        "verify",
        "--n-max",
        "2",
        "--Z",
        "1",
        "--inject-fault",
    ]);
    assert_eq!(faulty.status.code(), Some(2));
    assert!(stdout(&faulty).contains("fail"));
}

#[test]
fn regime_reports_reference_scale() {
    // At n = 1 the fine structure dominates the wall shift.
    let out = run(&["--command", "regime", "--n-max", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let d3: f64 = text
        .lines()
        .find(|l| l.starts_with("d_cubed_nm3,"))
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((d3 - 40.0).abs() / 40.0 < 0.05);
    assert!(text.contains("coupled_basis_applies,true"));
}
