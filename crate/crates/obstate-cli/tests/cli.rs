//! End-to-end tests of the `obstate` binary: the documented invocations,
//! exit codes, JSON round trips and byte-level determinism.

use std::f64::consts::PI;
use std::io::Write;
use std::process::{Command, Output};

use obstate::laurent::LaurentSeries;
use obstate::state::{GammaVector, InternalState};

fn obstate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obstate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    assert!(
        output.status.success(),
        "exit {:?}, stderr: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn coeffs_4_2_pins_the_pole_coefficient() {
    let out = obstate(&[
        "coeffs", "--n", "4", "--p", "2", "--m0sq", "1", "--mu", "1", "--s", "4", "--t", "4",
        "--u", "4",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let beta1 = json["betas"]["1"][0].as_f64().unwrap();
    assert!((beta1 - 1.0 / (32.0 * PI * PI)).abs() < 1e-18);
    assert_eq!(json["betas"]["1"][1].as_f64().unwrap(), 0.0);
    assert_eq!(json["n"], 4);
    assert_eq!(json["p"], 2);
}

#[test]
fn coeffs_accepts_momentum_quadruples() {
    // Four at-rest momenta of mass 1: s = t = u = 4.
    let quad = "1,0,0,0";
    let direct = obstate(&[
        "coeffs", "--n", "4", "--p", "2", "--m0sq", "1", "--mu", "1", "--s", "4", "--t", "4",
        "--u", "4",
    ]);
    let via_momenta = obstate(&[
        "coeffs", "--n", "4", "--p", "2", "--m0sq", "1", "--mu", "1", "--p1", quad, "--p2", quad,
        "--p3", quad, "--p4", quad,
    ]);
    assert_eq!(stdout(&direct), stdout(&via_momenta));
}

#[test]
fn trace_prints_the_text_rendering() {
    let out = obstate(&["trace", "--factors", "pi,1;pi,1"]);
    assert_eq!(stdout(&out), "eps^-2 + 2*eps^-1 + 1\n");
}

#[test]
fn trace_json_reparses_into_a_series() {
    let out = obstate(&["trace", "--factors", "pi,1;pi,1", "--format", "json"]);
    let series: LaurentSeries = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(series.min_order(), -2);
    assert_eq!(series.to_string(), "eps^-2 + 2*eps^-1 + 1");
}

#[test]
fn project_emits_a_state_json_that_reparses() {
    let out = obstate(&["project", "--factors", "pi,1;pi,2"]);
    let text = stdout(&out);
    assert!(text.contains("\"rho_D\":[0.0,0.0]"));
    let state: InternalState = serde_json::from_str(&text).unwrap();
    assert_eq!(state.loops(), 2);
    assert_eq!(state.trace_internal().to_string(), "2");
}

#[test]
fn factor_round_trips_the_gammas() {
    let out = obstate(&["factor", "--gammas", "1,2,1"]);
    let state: InternalState = serde_json::from_str(&stdout(&out)).unwrap();
    let gamma = GammaVector::from_trace(&state.trace_internal()).unwrap();
    for (k, expected) in [1.0, 2.0, 1.0].iter().enumerate() {
        assert!((gamma.gamma(k).re - expected).abs() < 1e-9);
        assert!(gamma.gamma(k).im.abs() < 1e-9);
    }
}

#[test]
fn rgflow_zero_coupling_has_constant_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flow.csv");
    let out = obstate(&[
        "rgflow",
        "--lambda-s",
        "0",
        "--mu-s",
        "1",
        "--m-s-sq",
        "1",
        "--mu-end",
        "2",
        "--steps",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "mu,m0_sq,lambda0,lambda_closed,m0_sq_closed"
    );
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[1], "1");
        assert_eq!(fields[2], "0");
        assert_eq!(fields[3], "0");
        assert_eq!(fields[4], "1");
    }
}

#[test]
fn rgflow_tracks_the_closed_form() {
    let out = obstate(&[
        "rgflow",
        "--lambda-s",
        "0.1",
        "--mu-s",
        "1",
        "--m-s-sq",
        "1",
        "--mu-end",
        "10",
        "--steps",
        "1000",
    ]);
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let fields: Vec<f64> = last.split(',').map(|f| f.parse().unwrap()).collect();
    // lambda0 vs lambda_closed at the endpoint.
    assert!((fields[2] - fields[3]).abs() <= 1e-9 * fields[3]);
}

#[test]
fn resum_propagator_reports_the_error() {
    let out = obstate(&[
        "resum",
        "propagator",
        "--p-sq",
        "3",
        "--m0sq",
        "1",
        "--m-re",
        "1",
        "--k",
        "40",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["closed"][0].as_f64().unwrap(), 1.0);
    assert!(json["abs_error"].as_f64().unwrap() <= 0.5f64.powi(41));
    assert_eq!(json["divergent"], false);
}

#[test]
fn resum_vacuum_and_coupling() {
    let out = obstate(&[
        "resum", "vacuum", "--r1-re", "0.1", "--tv2", "2", "--k", "20",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(json["abs_error"].as_f64().unwrap() <= 1e-12);

    let out = obstate(&["resum", "coupling", "--lambda0", "0.2", "--betas", "0.9"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let lambda = json["partial"][0].as_f64().unwrap();
    assert!((lambda - (0.2 + 0.04 * 0.9)).abs() < 1e-15);
    assert!(json["closed"].is_null());
}

#[test]
fn delta_demo_matches_closed_form() {
    let out = obstate(&["delta-demo", "--eps", "0.01", "--kernel", "gaussian"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(json["rel_err"].as_f64().unwrap() <= 1e-6);
    let closed = PI.sqrt() / (PI * 0.01) + PI.sqrt();
    assert!((json["closed"].as_f64().unwrap() - closed).abs() < 1e-12);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "coeffs", "--n", "0", "--p", "1", "--m0sq", "1.5", "--mu", "0.7",
    ];
    let first = obstate(&args);
    let second = obstate(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("base.cfg");
    let mut file = std::fs::File::create(&path).unwrap();
    writeln!(file, "# base parameters").unwrap();
    writeln!(file, "m0sq = 1.0").unwrap();
    writeln!(file, "mu = 1.0").unwrap();
    writeln!(file, "n = 0").unwrap();
    writeln!(file, "p = 1").unwrap();
    drop(file);

    let from_config = obstate(&["coeffs", "--config", path.to_str().unwrap()]);
    let explicit = obstate(&["coeffs", "--n", "0", "--p", "1", "--m0sq", "1", "--mu", "1"]);
    assert_eq!(stdout(&from_config), stdout(&explicit));

    // An explicit flag overrides the file entry.
    let overridden = obstate(&["coeffs", "--config", path.to_str().unwrap(), "--m0sq", "2"]);
    let direct = obstate(&["coeffs", "--n", "0", "--p", "1", "--m0sq", "2", "--mu", "1"]);
    assert_eq!(stdout(&overridden), stdout(&direct));
    assert_ne!(stdout(&overridden), stdout(&from_config));
}

#[test]
fn csv_format_for_tabular_outputs() {
    let out = obstate(&[
        "coeffs", "--n", "0", "--p", "1", "--m0sq", "1", "--mu", "1", "--format", "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "k,re,im");
    assert_eq!(text.lines().count(), 4); // header + beta_0, beta_1, beta_2

    let out = obstate(&["trace", "--factors", "pi,1;pi,1", "--format", "csv"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "exponent,re,im");
    assert!(text.lines().any(|l| l == "-2,1,0"));
}

#[test]
fn rgflow_log_steps_spaces_geometrically() {
    let out = obstate(&[
        "rgflow",
        "--lambda-s",
        "0.1",
        "--mu-s",
        "1",
        "--m-s-sq",
        "1",
        "--mu-end",
        "100",
        "--steps",
        "2",
        "--log-steps",
    ]);
    let text = stdout(&out);
    let mus: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(mus.len(), 3);
    assert!((mus[1] - 10.0).abs() < 1e-9); // geometric midpoint of [1, 100]
}

#[test]
fn usage_errors_exit_2() {
    let missing = obstate(&["coeffs", "--n", "0", "--p", "1"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("m0sq"));

    let unknown = obstate(&["coeffs", "--n", "6", "--p", "1", "--m0sq", "1", "--mu", "1"]);
    assert_eq!(unknown.status.code(), Some(2));

    let bad_flag = obstate(&["coeffs", "--nope"]);
    assert_eq!(bad_flag.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1_with_the_error_name() {
    let out = obstate(&[
        "coeffs", "--n", "4", "--p", "2", "--m0sq", "1", "--mu", "1", "--s", "4", "--t", "-2",
        "--u", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("OutOfRealDomain"), "stderr: {stderr}");

    let pole = obstate(&[
        "resum",
        "propagator",
        "--p-sq",
        "1",
        "--m0sq",
        "1",
        "--m-re",
        "1",
        "--k",
        "5",
    ]);
    assert_eq!(pole.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&pole.stderr).contains("OnShellPole"));
}
