use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const UNIFORM_DIAG: &str = r#"{"a11": 0.25, "a22": 0.25, "a33": 0.25, "a44": 0.25,
  "a14": {"re": 0.0625, "im": 0.0}, "a23": {"re": 0.125, "im": 0.0}}"#;

fn sqd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqd")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn validate_prints_report() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s.json", UNIFORM_DIAG);
    let o = sqd(&["validate", &f]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("valid X-state"));
    assert!(out.contains("spectrum: 0.375000000000 0.312500000000 0.187500000000 0.125000000000"));
}

#[test]
fn matrix_form_is_accepted() {
    let dir = TempDir::new().unwrap();
    let z = r#"{"re": 0.0, "im": 0.0}"#;
    let q = r#"{"re": 0.25, "im": 0.0}"#;
    let c = r#"{"re": 0.1, "im": 0.05}"#;
    let cc = r#"{"re": 0.1, "im": -0.05}"#;
    let m = format!(
        r#"{{"matrix": [[{q},{z},{z},{c}],[{z},{q},{z},{z}],[{z},{z},{q},{z}],[{cc},{z},{z},{q}]]}}"#
    );
    let f = write(&dir, "m.json", &m);
    assert_eq!(sqd(&["validate", &f]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(sqd(&["validate", missing.to_str().unwrap()]).status.code(), Some(2));

    let garbage = write(&dir, "g.json", "{not json");
    assert_eq!(sqd(&["validate", &garbage]).status.code(), Some(3));

    let bad = write(
        &dir,
        "bad.json",
        r#"{"a11": 0.25, "a22": 0.25, "a33": 0.25, "a44": 0.25,
           "a14": {"re": 0.3, "im": 0.0}, "a23": {"re": 0.0, "im": 0.0}}"#,
    );
    assert_eq!(sqd(&["validate", &bad]).status.code(), Some(4));

    let ok = write(&dir, "s.json", UNIFORM_DIAG);
    assert_eq!(sqd(&["compute", &ok, "--x", "-1"]).status.code(), Some(5));
    assert_eq!(sqd(&["frobnicate"]).status.code(), Some(5));
    let out = dir.path().join("o.csv");
    let out = out.to_str().unwrap();
    let steps_one = sqd(&["sweep-x", &ok, "--min", "0", "--max", "1", "--steps", "1", "--out", out]);
    assert_eq!(steps_one.status.code(), Some(5));
    let p_range = sqd(&["sweep-p", &ok, "--x", "1", "--min", "0", "--max", "1.5", "--steps", "3", "--out", out]);
    assert_eq!(p_range.status.code(), Some(5));
    assert_eq!(sqd(&["--help"]).status.code(), Some(0));
}

#[test]
fn compute_analytic_and_oracle_agree() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s.json", UNIFORM_DIAG);
    let a = sqd(&["compute", &f, "--x", "1"]);
    let o = sqd(&["compute", &f, "--x", "1", "--method", "oracle", "--oracle-grid", "5000"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(o.status.code(), Some(0));
    let field = |out: &Output, i: usize| -> f64 {
        let text = stdout(out);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,sqd,qd,s_w_min,s_b,s_ab,z1,z2,z3"));
        lines.next().unwrap().split(',').nth(i).unwrap().parse().unwrap()
    };
    assert!((field(&a, 1) - field(&o, 1)).abs() <= 1e-6);
    assert!((field(&a, 2) - field(&o, 2)).abs() <= 1e-6);

    let inf = stdout(&sqd(&["compute", &f, "--x", "inf"]));
    assert!(inf.lines().nth(1).unwrap().starts_with("inf,"));
}

#[test]
fn sweeps_are_deterministic_and_well_formed() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s.json", UNIFORM_DIAG);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = sqd(&["sweep-x", &f, "--min", "0", "--max", "5", "--steps", "21", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = read(&a);
    assert_eq!(text, read(&b));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,sqd,qd");
    assert_eq!(lines.len(), 22);
    assert!(lines[1].starts_with("0.00000000000,0.117143936308,"));
    assert!(lines[21].starts_with("5.00000000000,"));

    let p = dir.path().join("p.csv");
    let o = sqd(&["sweep-p", &f, "--x", "1", "--min", "0", "--max", "1", "--steps", "11", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<f64>> = read(&p)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    for i in 0..11 {
        assert!((rows[i][1] - rows[10 - i][1]).abs() <= 1e-10);
        assert!(rows[i][1] >= rows[5][1] - 1e-12);
    }
}

#[test]
fn surface_single_point_grid() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "s.json", UNIFORM_DIAG);
    let out = dir.path().join("s.csv");
    let o = sqd(&[
        "surface", &f, "--x-min", "20", "--x-max", "20", "--x-steps", "2", "--p-min", "1",
        "--p-max", "1", "--p-steps", "2", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = read(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,p,sqd_noisy,qd_noisy,qd_clean");
    assert_eq!(lines.len(), 5);
    for l in &lines[1..] {
        let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((v[2] - v[3]).abs() <= 1e-8);
        assert!((v[3] - v[4]).abs() <= 1e-10);
    }
}
