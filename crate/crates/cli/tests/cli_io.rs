//! Command-line contract: exit codes, CSV/JSON shapes, output-path
//! resolution and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_statedos"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("statedos-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn density_rows_for_the_uniform_case() {
    let text = stdout(&["density", "--n", "1", "--points", "3"]);
    assert_eq!(text, "E,mu\n0,1\n0.5,1\n1,1\n");
}

#[test]
fn density_includes_the_triangle_peak() {
    let text = stdout(&["density", "--n", "2", "--points", "5"]);
    assert!(text.contains("\n0.5,2\n"), "missing peak row in:\n{text}");
    assert!(text.starts_with("E,mu\n"));
}

#[test]
fn density_json_echoes_config() {
    let text = stdout(&["density", "--n", "2", "--points", "3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["config"]["command"], "density");
    assert_eq!(value["rows"][1]["mu"], "2");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["density", "--n", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["density", "--n", "2", "--points", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["density"]).status.code(), Some(2)); // missing --n
    assert_eq!(
        run(&["omega-series", "--alpha", "3/2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["omega-series", "--alpha", "5/2", "--jmax", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["montecarlo", "--samples", "50", "--bins", "10"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["saddle", "--alpha", "1/2"]).status.code(), Some(2));
    assert_eq!(
        run(&["richardson", "--jmax", "8", "--order", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verification_failure_exits_1() {
    let out = run(&["verify-all", "--max-n", "4", "--richardson-tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_passed"], false);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["richardson-constant"]);
}

#[test]
fn verify_all_stays_exact_through_n_200() {
    let out = run(&["verify-all", "--max-n", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_passed"], true);
    assert!(report["checks"][0]["detail"]
        .as_str()
        .unwrap()
        .contains("n = 1..=200"));
}

#[test]
fn verify_all_reports_the_richardson_estimate() {
    let out = run(&["verify-all", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["checks"].as_array().unwrap().len(), 6);
    let richardson = &report["checks"][5];
    assert_eq!(richardson["name"], "richardson-constant");
    assert!(richardson["detail"]
        .as_str()
        .unwrap()
        .contains("1.954410047612"));
}

#[test]
fn output_path_resolves_under_env_dir() {
    let dir = temp_dir("envdir");
    let out = bin()
        .args([
            "density", "--n", "1", "--points", "3", "--output", "flat.csv",
        ])
        .env("STATEDOS_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.join("flat.csv")).unwrap();
    assert_eq!(written, "E,mu\n0,1\n0.5,1\n1,1\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn absolute_output_path_ignores_env_dir() {
    let dir = temp_dir("absdir");
    let target = dir.join("direct.csv");
    let out = bin()
        .args(["density", "--n", "1", "--points", "2", "--output"])
        .arg(&target)
        .env("STATEDOS_OUT_DIR", "/nonexistent-should-be-ignored")
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(target.exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unwritable_output_exits_1() {
    let out = run(&["density", "--n", "1", "--output", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn montecarlo_is_deterministic_per_seed() {
    let args = [
        "montecarlo",
        "--n",
        "2",
        "--samples",
        "5000",
        "--bins",
        "10",
        "--seed",
        "7",
        "--tolerance",
        "0.5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());

    let other = run(&[
        "montecarlo",
        "--n",
        "2",
        "--samples",
        "5000",
        "--bins",
        "10",
        "--seed",
        "8",
        "--tolerance",
        "0.5",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn montecarlo_json_carries_statistics() {
    let text = stdout(&[
        "montecarlo",
        "--n",
        "1",
        "--samples",
        "20000",
        "--bins",
        "20",
        "--seed",
        "3",
        "--tolerance",
        "0.2",
        "--format",
        "json",
    ]);
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["degrees_of_freedom"], 19);
    assert!(report["sup_deviation"].as_f64().unwrap() < 0.2);
    assert_eq!(report["rows"].as_array().unwrap().len(), 20);
}

#[test]
fn normalize_and_identity_tables() {
    let text = stdout(&["normalize", "--max-n", "6"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,integral,ok"));
    assert!(lines.all(|l| l.ends_with(",1,true")));

    let text = stdout(&["identity", "--max-n", "4"]);
    assert_eq!(
        text,
        "n,lhs,rhs,ok\n1,-1,-1,true\n2,2,2,true\n3,-6,-6,true\n4,24,24,true\n"
    );
}

#[test]
fn omega_series_header_and_gate() {
    let text = stdout(&["omega-series", "--alpha", "5/2", "--jmax", "8"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "J,omega,omega_float,max_term_float,cancellation_ratio"
    );
    assert_eq!(lines.len(), 5); // J = 2, 4, 6, 8
    assert!(lines[1].starts_with("2,"));
}

#[test]
fn saddle_csv_has_closed_form_columns() {
    let text = stdout(&["saddle", "--alpha", "2"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "alpha,lambda0,f_at_saddle,f_second_at_saddle,fprime_residual,predicted_rate,prefactor_alpha2"
    );
    assert!(lines[1].starts_with("2,0,0,-0.6666666666666666,"));
    assert!(lines[1].ends_with("1.9544100476116797"));
}

#[test]
fn richardson_command_reports_reference() {
    let text = stdout(&["richardson", "--jmax", "32", "--order", "3"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "estimate,reference,abs_deviation,jmax,order");
    let fields: Vec<&str> = lines[1].split(',').collect();
    let estimate: f64 = fields[0].parse().unwrap();
    assert!((estimate - 1.9544100476).abs() < 1e-6);
}
