//! End-to-end tests running the compiled `dirac-trap` binary.

use std::collections::HashMap;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dirac-trap"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

/// Parse a CSV body into column -> values.
fn parse_csv(text: &str) -> HashMap<String, Vec<f64>> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .expect("header")
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let mut cols: HashMap<String, Vec<f64>> = header
        .iter()
        .map(|name| (name.clone(), Vec::new()))
        .collect();
    for line in lines {
        for (name, field) in header.iter().zip(line.split(',')) {
            cols.get_mut(name)
                .unwrap()
                .push(field.parse::<f64>().expect("numeric field"));
        }
    }
    cols
}

#[test]
fn eigen_default_run() {
    let out = run(&["eigen"]);
    assert!(out.status.success());
    let cols = parse_csv(&stdout_str(&out));
    assert_eq!(cols["lambda"].len(), 4);
    // moduli rows normalized
    for i in 0..4 {
        let total: f64 = ["m_a", "m_b", "m_c", "m_d"]
            .iter()
            .map(|c| cols[*c][i] * cols[*c][i])
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
    // lambda values match the closed form for m=p=eps=kappa=mu=1, theta=pi/4:
    // g1 = 4, g2 = 2
    let g1 = 4.0;
    let sg2 = 2.0f64.sqrt();
    let expect = [
        (g1 + 2.0 * sg2).sqrt(),
        (g1 - 2.0 * sg2).sqrt(),
        -(g1 + 2.0 * sg2).sqrt(),
        -(g1 - 2.0 * sg2).sqrt(),
    ];
    for (got, want) in cols["lambda"].iter().zip(expect.iter()) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn eigen_theta_pi_half_has_zero_chirality() {
    let out = run(&["eigen", "--theta", "1.5707963267948966"]);
    assert!(out.status.success());
    let cols = parse_csv(&stdout_str(&out));
    for v in &cols["chirality"] {
        assert!(v.abs() < 1e-12);
    }
}

#[test]
fn eigen_degenerate_exits_with_code_3() {
    let out = run(&["eigen", "--kappa", "0", "--mu", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("degenerate"));
    assert!(err.contains("--oracle"));
}

#[test]
fn eigen_oracle_fallback_succeeds() {
    let out = run(&["eigen", "--kappa", "0", "--mu", "0", "--oracle"]);
    assert!(out.status.success());
    let cols = parse_csv(&stdout_str(&out));
    // free-particle doublets +-sqrt(2) in the fixed (n,s) column order
    let e = 2.0f64.sqrt();
    let expect = [e, e, -e, -e];
    for (got, want) in cols["lambda"].iter().zip(expect.iter()) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn eigen_single_mode_selection() {
    let out = run(&["eigen", "--mode", "1,0"]);
    assert!(out.status.success());
    let cols = parse_csv(&stdout_str(&out));
    assert_eq!(cols["lambda"].len(), 1);
    assert_eq!(cols["n"][0], 1.0);
    assert_eq!(cols["s"][0], 0.0);
    assert!(cols["lambda"][0] < 0.0);
}

#[test]
fn evolve_rows_satisfy_identities() {
    let out = run(&["evolve", "--steps", "201"]);
    assert!(out.status.success());
    let cols = parse_csv(&stdout_str(&out));
    assert_eq!(cols["pt"].len(), 201);
    // first row: the state is the initial level and separable
    assert!((cols["p_a"][0] - 1.0).abs() < 1e-12);
    assert!(cols["concurrence"][0] < 1e-6);
    for i in 0..cols["pt"].len() {
        let total = cols["p_a"][i] + cols["p_b"][i] + cols["p_c"][i] + cols["p_d"][i];
        assert!((total - 1.0).abs() < 1e-10);
        let identity = 2.0 * (cols["p_ad"][i] + cols["p_cb"][i]) - 1.0;
        assert!((cols["chirality"][i] - identity).abs() < 1e-12);
    }
}

#[test]
fn evolve_kappa_zero_selection_rule() {
    let out = run(&["evolve", "--kappa", "0", "--steps", "401"]);
    assert!(out.status.success());
    let cols = parse_csv(&stdout_str(&out));
    for i in 0..cols["pt"].len() {
        assert!(cols["p_b"][i] <= 1e-12);
        assert!(cols["p_c"][i] <= 1e-12);
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["evolve", "--steps", "101", "--theta", "0.9"]);
    let b = run(&["evolve", "--steps", "101", "--theta", "0.9"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_format_schema() {
    let out = run(&["eigen", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let records = doc.as_array().expect("array of records");
    assert_eq!(records.len(), 4);
    for rec in records {
        let obj = rec.as_object().unwrap();
        assert!(obj["lambda"].is_number());
        // phases are [re, im] pairs or null
        let ph = &obj["phase_ab"];
        assert!(ph.is_null() || ph.as_array().map(|a| a.len()) == Some(2));
    }
}

#[test]
fn sweep_theta_axis() {
    let out = run(&["sweep", "--sweep", "theta=0.1:3.0:7", "--mode", "0,0"]);
    assert!(out.status.success());
    let cols = parse_csv(&stdout_str(&out));
    assert_eq!(cols["theta"].len(), 7);
    assert!((cols["theta"][0] - 0.1).abs() < 1e-15);
    assert!((cols["theta"][6] - 3.0).abs() < 1e-15);
    for v in &cols["concurrence"] {
        assert!(v.is_finite() && (0.0..=1.0).contains(v));
    }
}

#[test]
fn invalid_parameters_exit_with_code_2() {
    let out = run(&["evolve", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["eigen", "--m", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    // clap usage errors also use code 2
    let out = run(&["eigen", "--mode", "5,5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn figure_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();

    // figure 1: concurrence decreasing in m/p for every series
    let out = run(&["figure", "1", "--out", dir_str]);
    assert!(out.status.success());
    let cols = parse_csv(&std::fs::read_to_string(dir.path().join("fig1_vs_mp_s0.csv")).unwrap());
    for series in ["c_k0mu1", "c_k1mu0", "c_k1mu1"] {
        let values = &cols[series];
        assert!(values.windows(2).all(|w| w[1] < w[0]), "{series} not decreasing");
    }
    // kappa = 0 series has vanishing chirality
    for v in &cols["abs_chi_k0mu1"] {
        assert!(v.abs() < 1e-12);
    }

    // figure 2: kappa = 0 series has null a->b and a->c channels
    let out = run(&["figure", "2", "--out", dir_str, "--steps", "401"]);
    assert!(out.status.success());
    let cols = parse_csv(&std::fs::read_to_string(dir.path().join("fig2_m1.csv")).unwrap());
    for i in 0..cols["pt"].len() {
        assert!(cols["p_ab_k0mu1"][i] <= 1e-12);
        assert!(cols["p_ac_k0mu1"][i] <= 1e-12);
        let total: f64 = ["p_aa_k1mu1", "p_ab_k1mu1", "p_ac_k1mu1", "p_ad_k1mu1"]
            .iter()
            .map(|c| cols[*c][i])
            .sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    // figure 3: survivor probabilities start at 1
    let out = run(&["figure", "3", "--out", dir_str, "--steps", "101"]);
    assert!(out.status.success());
    let cols = parse_csv(&std::fs::read_to_string(dir.path().join("fig3_m0.csv")).unwrap());
    assert!((cols["p_aa"][0] - 1.0).abs() < 1e-12);
    assert!((cols["p_dd"][0] - 1.0).abs() < 1e-12);

    // figure 4: kappa = 0 concurrence reaches ~1 on the default grid
    let out = run(&["figure", "4", "--out", dir_str]);
    assert!(out.status.success());
    let cols = parse_csv(&std::fs::read_to_string(dir.path().join("fig4_m1.csv")).unwrap());
    let max_c = cols["c_k0mu1"].iter().cloned().fold(0.0f64, f64::max);
    assert!(max_c >= 1.0 - 1e-6);
    assert!((cols["c_k0mu1"][0]).abs() < 1e-6);

    let out = run(&["figure", "9", "--out", dir_str]);
    assert_eq!(out.status.code(), Some(2));
}
