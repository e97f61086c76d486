use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn lsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsum"))
        .args(args)
        .env_remove("LSUM_PRIME_CUTOFF")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn pair(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn eval_zeta_two() {
    let out = lsum(&["eval", "--spec", "zeta", "--s", "2+0i"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let (re, im) = pair(&v["value"]);
    let tail = v["tail_bound"].as_f64().unwrap();
    assert!((re - PI * PI / 6.0).abs() <= tail + 1e-12);
    assert_eq!(im, 0.0);
}

#[test]
fn eval_combo_adds_zeta_four() {
    let out = lsum(&["eval", "--spec", "zeta", "--N", "2", "--s", "2+0i", "--combo"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let want = PI * PI / 6.0 + PI.powi(4) / 90.0;
    assert!((pair(&v["value"]).0 - want).abs() <= v["tail_bound"].as_f64().unwrap() + 1e-12);
    assert!((want - 2.7272573).abs() < 1e-6);
}

#[test]
fn eval_outside_half_plane_is_a_usage_error() {
    assert_eq!(lsum(&["eval", "--spec", "zeta", "--s", "0.5+0i"]).status.code(), Some(2));
    assert_eq!(lsum(&["eval", "--spec", "nope", "--s", "2"]).status.code(), Some(2));
    assert_eq!(lsum(&["eval", "--s", "2", "--bogus"]).status.code(), Some(2));
}

#[test]
fn tight_tolerance_is_a_precision_failure() {
    let out = lsum(&["eval", "--s", "1.1", "--prime-cutoff", "100", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn env_sets_the_default_cutoff() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_lsum"));
        c.args(["eval", "--s", "2"]).env_remove("LSUM_PRIME_CUTOFF");
        if let Some(e) = env {
            c.env("LSUM_PRIME_CUTOFF", e);
        }
        json(&c.output().unwrap())["tail_bound"].as_f64().unwrap()
    };
    assert!(run(Some("1000")) > 10.0 * run(None));
}

#[test]
fn figure_csv_has_the_double_loop() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = lsum(&["curve", "fig1", "--r", "2", "--samples", "4096", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,u,v"));
    let rows: Vec<[f64; 3]> = lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [f[0], f[1], f[2]]
        })
        .collect();
    assert_eq!(rows.len(), 4096);
    // theta = 0 and theta = pi sit on the real axis
    assert!(rows[0][2].abs() < 1e-15);
    assert!((rows[0][1] + (7.0f64 / 6.0).ln()).abs() < 1e-15);
    assert!(rows[2048][2].abs() < 1e-15);
    assert!((rows[2048][1] + 1.5f64.ln()).abs() < 1e-15);
    // mirror symmetry theta -> 2 pi - theta
    for j in 1..4096 {
        let (a, b) = (rows[j], rows[4096 - j]);
        assert!((a[1] - b[1]).abs() < 1e-14 && (a[2] + b[2]).abs() < 1e-14);
    }
    // winding of the polyline about the origin
    let mut turn = 0.0;
    for j in 0..4096 {
        let (a, b) = (rows[j], rows[(j + 1) % 4096]);
        let cross = a[1] * b[2] - a[2] * b[1];
        let dot = a[1] * b[1] + a[2] * b[2];
        turn += cross.atan2(dot);
    }
    assert_eq!((turn / (2.0 * PI)).round().abs(), 2.0);
}

#[test]
fn figure_rejects_unit_radius() {
    assert_eq!(lsum(&["curve", "fig1", "--r", "1"]).status.code(), Some(2));
}

#[test]
fn crossings_report_closed_forms() {
    let v = json(&lsum(&["curve", "crossings", "--r", "2"]));
    assert!((v["real"]["at_edge"].as_f64().unwrap() - (4.0f64 / 3.0).ln()).abs() < 1e-15);
    let c = v["imaginary"]["cos_plus"].as_f64().unwrap();
    assert!((c - (29f64.sqrt() - 1.0) / 8.0).abs() < 1e-15);
}

#[test]
fn region_verdicts() {
    let out = lsum(&["region", "--prime-cutoff", "20000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let status = |k: usize| v["verdicts"][k - 1]["status"].as_str().unwrap().to_string();
    assert_eq!(status(9), "ZerosExist");
    assert_eq!(status(5), "ZeroFree");
    assert_eq!(status(7), "Indeterminate");
    let row = &v["verdicts"][6];
    let (lo, hi, target) = (
        row["lower_used"].as_f64().unwrap(),
        row["upper_used"].as_f64().unwrap(),
        row["target"].as_f64().unwrap(),
    );
    assert!(lo < target && target <= hi);
    let table = String::from_utf8(out.stderr).unwrap();
    assert!(table.contains("Indeterminate"));
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        vec!["region", "--prime-cutoff", "5000", "--sigma", "1,1.01"],
        vec!["eval", "--s", "1.5-2.5i", "--log"],
        vec!["lemma", "--N", "3", "--spec", "zeta-quarter"],
    ] {
        let out = lsum(&args);
        let text = String::from_utf8(out.stdout).unwrap();
        let parsed: Value = serde_json::from_str(text.trim_end()).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim_end(), "{args:?}");
    }
}

#[test]
fn lemma_sampling_is_deterministic_in_the_seed() {
    let args = ["lemma", "--N", "3", "--spec", "zeta-quarter", "--samples", "6", "--seed", "11", "--prime-cutoff", "500"];
    let a = lsum(&args);
    let b = lsum(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["disc"]["radius_exact"]["num"], 40);
    assert!(v["sample"]["within_bound"].as_bool().unwrap());
}

#[test]
fn fixed_point_demo() {
    let out = lsum(&["fixed-point", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let targets = v["targets"].as_array().unwrap();
    assert_eq!(targets.len(), 16);
    assert!(targets.iter().all(|t| t["report"]["residual"].as_f64().unwrap() < 1e-6));
    let sol = &v["solutions"][0]["twists"];
    for key in ["rotate_theta1", "rotate_minus_theta2", "phase_pi"] {
        assert!(sol[key].is_object(), "{key}");
    }
    assert!(v["coverage"]["covered"].as_bool().unwrap());
}

#[test]
fn zeros_emits_only_json_lines() {
    let out = lsum(&["zeros", "--N", "2", "--rect", "1.001,1.2,0,40", "--samples", "24"]);
    assert_eq!(out.status.code(), Some(0));
    for line in String::from_utf8(out.stdout).unwrap().lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v.as_object().unwrap().len(), 4);
    }
    assert_eq!(lsum(&["zeros", "--rect", "0.5,1.2,0,40"]).status.code(), Some(2));
}

#[test]
fn verify_filters_and_names_failures() {
    let ok = lsum(&["verify", "--only", "7,9"]);
    assert_eq!(ok.status.code(), Some(0));
    let table = String::from_utf8(ok.stderr).unwrap();
    assert_eq!(table.lines().filter(|l| l.starts_with("PASS")).count(), 2);

    let bad = lsum(&["verify", "--only", "region", "--lower-reach-target", "0.7"]);
    assert_eq!(bad.status.code(), Some(1));
    let table = String::from_utf8(bad.stderr).unwrap();
    assert!(table.contains("FAIL [ 4] lower reach"));
    assert!(table.contains("first: [4]"));

    let curve = lsum(&["verify", "--only", "curve", "--json"]);
    let v = json(&curve);
    let ids: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [1, 2, 3, 4, 5, 6]);

    assert_eq!(lsum(&["verify", "--only", "nonsense"]).status.code(), Some(2));
}
