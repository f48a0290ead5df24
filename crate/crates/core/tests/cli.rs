use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pr-interp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn problem(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pr-interp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(num).collect()
}

fn join(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x:e}"))
        .collect::<Vec<_>>()
        .join(",")
}

#[test]
fn solve_builds_four_certified_entries() {
    let p = problem("solve13.json", r#"{"nodes": [-1, -3], "targets": [1, 3]}"#);
    let out = run(&["solve", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    for e in entries {
        assert_eq!(e["is_pr"], Value::Bool(true));
        assert!(num(&e["max_residual"]) <= 1e-8);
        assert!(num(&e["r"]) >= num(&e["r_min"]));
    }
    assert!(v["skipped"].as_array().unwrap().is_empty());
}

#[test]
fn zero_target_skips_reciprocal_branches() {
    let p = problem("solve20.json", r#"{"nodes": [-1, -3], "targets": [2, 0]}"#);
    let out = run(&["solve", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for e in v["entries"].as_array().unwrap() {
        assert_eq!(e["direction"], "direct");
    }
    let skipped = v["skipped"].as_array().unwrap();
    assert_eq!(skipped.len(), 2);
    for s in skipped {
        assert_eq!(s["direction"], "reciprocal");
        assert_eq!(s["reason"], "zero target");
    }
}

#[test]
fn only_reciprocal_with_zero_target_is_infeasible() {
    let p = problem("recip20.json", r#"{"nodes": [-1, -3], "targets": [2, 0]}"#);
    let out = run(&["solve", p.to_str().unwrap(), "--direction", "reciprocal"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_one() {
    let bad = problem("bad.json", r#"{"nodes": [-1, -3], "targets": "#);
    assert_eq!(
        run(&["solve", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
    let unknown = problem(
        "unknown.json",
        r#"{"nodes": [-1], "targets": [1], "extra": 0}"#,
    );
    assert_eq!(
        run(&["solve", unknown.to_str().unwrap()]).status.code(),
        Some(1)
    );
    let rhp = problem("rhp.json", r#"{"nodes": [1], "targets": [1]}"#);
    assert_eq!(
        run(&["solve", rhp.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["solve", "/nonexistent/problem.json"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["check-pr", "--num", "x", "--den", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
}

#[test]
fn check_pr_verdicts_and_exit_codes() {
    let s = run(&["check-pr", "--num", "0,1", "--den", "1"]);
    assert_eq!(s.status.code(), Some(0));
    assert_eq!(json(&s)["is_pr"], Value::Bool(true));

    let neg = run(&["check-pr", "--num", "0,-1", "--den", "1"]);
    assert_eq!(neg.status.code(), Some(3));

    let allpass = run(&["check-pr", "--num", "-1,1", "--den", "1,1"]);
    assert_eq!(allpass.status.code(), Some(3));
    let v = json(&allpass);
    assert_eq!(v["is_pr"], Value::Bool(false));
    assert!(num(&v["min_axis_value"]) < 0.0);
    assert!(v["witness_omega"].is_number());
}

#[test]
fn rmin_matches_closed_forms() {
    let y11 = problem("y11.json", r#"{"nodes": [-1, -3], "targets": [-1, -1]}"#);
    let out = run(&["rmin", y11.to_str().unwrap(), "--point", "0.5,0.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((num(&json(&out)["r_min"]) - 2.0 / 3.0).abs() < 1e-9);

    let y13 = problem("y13.json", r#"{"nodes": [-1, -3], "targets": [1, 3]}"#);
    let out = run(&["rmin", y13.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(num(&v["r_min"]), 0.0);
    assert_eq!(v["attained_at"]["kind"], "zero_clamp");
}

#[test]
fn region_emits_cells_then_boundaries() {
    let p = problem("region.json", r#"{"nodes": [-1, -3], "targets": [1, 3]}"#);
    let out = run(&[
        "region",
        p.to_str().unwrap(),
        "--window",
        "2,3,-8,-5",
        "--resolution",
        "2,4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,x,y,admissible,status,spr_epsilon"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.iter().filter(|r| r[0] == "cell").count(), 8);
    let bounds: Vec<_> = rows.iter().filter(|r| r[0] == "boundary").collect();
    assert_eq!(bounds.len(), 2);
    let at_two = bounds
        .iter()
        .find(|r| r[1].parse::<f64>().unwrap() == 2.0)
        .unwrap();
    assert!((at_two[2].parse::<f64>().unwrap() + 6.0).abs() < 1e-5);
    assert_eq!(at_two[4], "rising");

    let bad = run(&["region", p.to_str().unwrap(), "--window", "2,3,-8"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn eval_samples_the_axis() {
    let out = run(&["eval", "--num", "1", "--den", "1,1", "--omega", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows, vec![vec![0.0, 1.0, 0.0], vec![1.0, 0.5, -0.5]]);

    // 2 - 1/(s + 2) = (2s + 3)/(s + 2)
    let out = run(&["eval", "--num", "3,2", "--den", "2,1", "--omega", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let re: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((re - 1.5).abs() < 1e-15);

    let out = run(&[
        "eval", "--num", "0,1", "--den", "1", "--from", "1", "--to", "100", "--points", "3",
        "--log",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn output_is_deterministic() {
    let p = problem(
        "det.json",
        r#"{"nodes": [{"re": -1, "im": 2}, -0.5, -3], "targets": [{"re": 1, "im": -0.5}, 2, 0.7]}"#,
    );
    let a = run(&["solve", p.to_str().unwrap()]);
    let b = run(&["solve", p.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let p = problem("outflag.json", r#"{"nodes": [-1, -3], "targets": [1, 3]}"#);
    let dest = p.with_file_name("result.json");
    let out = run(&[
        "solve",
        p.to_str().unwrap(),
        "--out",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
}

#[test]
fn every_solve_entry_passes_check_pr() {
    let p = problem(
        "roundtrip.json",
        r#"{"nodes": [{"re": -1, "im": 2}, -0.5, -3], "targets": [{"re": 1, "im": -0.5}, 2, 0.7]}"#,
    );
    let v = json(&run(&["solve", p.to_str().unwrap()]));
    let entries = v["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        let num = join(&floats(&e["numerator"]));
        let den = join(&floats(&e["denominator"]));
        let out = run(&["check-pr", "--num", &num, "--den", &den]);
        assert_eq!(out.status.code(), Some(0), "{num} / {den}");
    }
}
