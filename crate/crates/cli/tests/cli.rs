use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).output().expect("run qwalk")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

const HALF_I: &str = "origin:0.7071067811865476,0.7071067811865476i";

#[test]
fn evolve_hadamard_window() {
    let out = qwalk(&["evolve", "--coin", "theta:pi/4", "--init", HALF_I, "--steps", "100"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("x,value\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 201);
    assert_eq!((rows[0][0], rows[200][0]), (-100.0, 100.0));
    let total: f64 = rows.iter().map(|r| r[1]).sum();
    assert!((total - 1.0).abs() < 1e-12);
    for r in &rows {
        if (r[0] as i64) % 2 != 0 {
            assert_eq!(r[1], 0.0);
        }
    }
}

#[test]
fn evolve_range_rows() {
    let out = qwalk(&["evolve", "--coin", "hadamard", "--init", "origin:1,0", "--steps", "3", "--from", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,x,value\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5 + 7);
    let at_two: f64 = rows.iter().filter(|r| r[0] == 2.0).map(|r| r[2]).sum();
    assert!((at_two - 1.0).abs() < 1e-14);
}

#[test]
fn evolve_rejects_bad_input() {
    assert_eq!(code(&qwalk(&["evolve", "--init", "origin:1,0", "--steps", "2"])), 2);
    assert_eq!(code(&qwalk(&["evolve", "--coin", "grover:3", "--init", "origin:1,0", "--steps", "2"])), 2);
    assert_eq!(code(&qwalk(&["evolve", "--coin", "explicit:1,1;1,0", "--init", "origin:1,0", "--steps", "2"])), 2);
    assert_eq!(code(&qwalk(&["evolve", "--coin", "hadamard", "--init", "origin:1,x", "--steps", "2"])), 2);
}

#[test]
fn stationary_generic_hadamard() {
    let out = qwalk(&["stationary", "--case", "generic", "--theta", "pi/4", "--k", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["case"], "generic_1");
    assert_eq!(v["per_site_measure"].as_f64().unwrap(), 2.0);
    assert!(v["residual"].as_f64().unwrap() <= 1e-12);
    assert!(v["max_dev"].as_f64().unwrap() <= 1e-12);
    let l = v["lambda"].as_array().unwrap();
    let arg = l[1].as_f64().unwrap().atan2(l[0].as_f64().unwrap());
    assert!((arg - 3.0 * PI / 4.0).abs() < 1e-12);
}

#[test]
fn stationary_grover3_plus() {
    let out = qwalk(&["stationary", "--case", "grover3-plus", "--psi0", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["case"], "grover3_plus");
    assert!((v["per_site_measure"].as_f64().unwrap() - 4.0).abs() < 1e-14);
    let l = v["lambda"].as_array().unwrap();
    assert!((l[0].as_f64().unwrap() + 1.0 / 3.0).abs() < 1e-15);
    assert!((l[1].as_f64().unwrap() - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-15);
}

#[test]
fn stationary_rejections_and_failures() {
    assert_eq!(code(&qwalk(&["stationary", "--case", "a0", "--alpha", "0", "--beta", "1"])), 2);
    assert_eq!(code(&qwalk(&["stationary", "--case", "nonsense"])), 2);
    assert_eq!(code(&qwalk(&["stationary", "--case", "generic", "--coin", "a0:0,0"])), 2);
    let out = qwalk(&["--tol", "1e-30", "stationary", "--case", "grover3-plus"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["case"], "grover3_plus");
}

#[test]
fn uniform_window_generic_and_grover() {
    let out = qwalk(&["uniform-window", "--case", "generic", "--theta", "pi/4", "--M", "10"]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 21);
    for r in &rows {
        assert!((r[1] - 1.0 / 21.0).abs() <= 1e-12);
    }
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary["M"], 10);
    assert!((summary["interval_mass"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let out = qwalk(&["uniform-window", "--case", "grover3-plus", "--M", "5", "--json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["max_dev"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn uniform_window_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.csv");
    let out = qwalk(&["uniform-window", "--case", "a0-minus", "--xi", "pi", "--M", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert!((r[1] - 1.0 / 3.0).abs() <= 1e-15);
    }
    assert_eq!(stdout_json(&out)["M"], 1);
}

#[test]
fn uniform_window_rejects_empty_interval() {
    assert_eq!(code(&qwalk(&["uniform-window", "--case", "generic", "--M", "0"])), 2);
    assert_eq!(code(&qwalk(&["uniform-window", "--case", "generic", "--M", "-3"])), 2);
}

#[test]
fn density_konno_symmetric() {
    let out = qwalk(&[
        "density", "--model", "konno", "--theta", "pi/4", "--alpha", "0.7071067811865476", "--beta",
        "0.7071067811865476i", "--grid", "1000",
    ]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 1001);
    assert_eq!(rows[500][0], 0.0);
    assert!((rows[500][1] - 1.0 / PI).abs() < 1e-12);
    for (l, r) in rows.iter().zip(rows.iter().rev()) {
        assert!((l[1] - r[1]).abs() < 1e-12);
    }
}

#[test]
fn density_grover3_compare() {
    let out = qwalk(&["density", "--model", "grover3", "--alpha", "1", "--compare", "200", "--json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!((v["delta_mass"].as_f64().unwrap() - 6f64.sqrt() / 6.0).abs() < 1e-12);
    assert_eq!(v["n"], 200);
    assert!(v["ks_distance"].as_f64().unwrap() < 0.05);
    let strict = qwalk(&["density", "--model", "grover3", "--alpha", "1", "--compare", "50", "--max-ks", "1e-6", "--json"]);
    assert_eq!(code(&strict), 1);
}

#[test]
fn density_rejects_bad_input() {
    assert_eq!(code(&qwalk(&["density", "--model", "konno", "--theta", "pi/4", "--grid", "0"])), 2);
    assert_eq!(code(&qwalk(&["density", "--model", "konno", "--theta", "pi/4", "--alpha", "1", "--beta", "1"])), 2);
    assert_eq!(code(&qwalk(&["density", "--model", "konno"])), 2);
    assert_eq!(code(&qwalk(&["density", "--model", "cauchy", "--theta", "pi/4"])), 2);
}

#[test]
fn timeavg_first_term_is_initial_measure() {
    let out = qwalk(&["timeavg", "--coin", "grover:3", "--init", "origin:1,0,0", "--steps", "1"]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows, vec![vec![0.0, 1.0]]);
    assert_eq!(code(&qwalk(&["timeavg", "--coin", "grover:3", "--init", "origin:1,0,0", "--steps", "0"])), 2);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"command": "evolve", "coin": "hadamard", "init": "origin:1,0", "steps": 5, "json": true}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let v = stdout_json(&qwalk(&["--config", cfg]));
    assert_eq!(v["steps"], 5);
    let v = stdout_json(&qwalk(&["--config", cfg, "--steps", "1"]));
    assert_eq!(v["steps"], 1);
    assert_eq!(v["offset"], -1);
    let v = stdout_json(&qwalk(&["evolve", &format!("--config={cfg}"), "--coin", "grover:3", "--init", "origin:1,0,0"]));
    assert_eq!(v["values"].as_array().unwrap().len(), 11);
    assert_eq!(code(&qwalk(&["--config", "/nonexistent/run.json"])), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["density", "--model", "konno", "--theta", "pi/3", "--alpha", "0.6", "--beta", "0.8i", "--compare", "300"];
    let a = qwalk(&args);
    let b = qwalk(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
    let args = ["evolve", "--coin", "grover:3", "--init", "origin:0.6,0,0.8i", "--steps", "60"];
    assert_eq!(qwalk(&args).stdout, qwalk(&args).stdout);
}
