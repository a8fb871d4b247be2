use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn ellsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellsurf")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn construct_from_roots() {
    let out = ellsurf(&["construct", "--roots", "1", "2", "3", "4", "5", "6"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["parameters"]["A"], "8916100448256000000");
    assert_eq!(v["admissibility"]["admissible"], true);
    assert_eq!(v["rationality"], "rational");
    assert_eq!(v["surfaces"]["weierstrass"]["form"], "weierstrass");
}

#[test]
fn repeated_root_is_an_input_error() {
    let out = ellsurf(&["construct", "--roots", "1", "1", "2", "3", "4", "5"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("same square"));
}

#[test]
fn construct_from_catalog() {
    let v = stdout_json(&ellsurf(&["construct", "--catalog", "rank8-quartic"]));
    assert_eq!(v["points"].as_array().unwrap().len(), 8);
    assert_eq!(v["rationality"], "undetermined");
    assert_eq!(code(&ellsurf(&["construct", "--catalog", "rank9"])), 2);
}

#[test]
fn nagao_small_bound() {
    let out = ellsurf(&["nagao", "--roots", "1", "2", "3", "4", "5", "6", "--pmax", "10"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    let primes: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(primes, ["3", "5", "7"]);
    assert!(csv.starts_with("p,ae_numerator,minus_p_ae,expected,deviation\n"));
}

#[test]
fn nagao_certificate_and_limit() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let roots = ["1", "2", "3", "4", "5", "6"];
    let mut args = vec!["--out-dir", d, "nagao", "--roots"];
    args.extend(roots);
    args.extend(["--pmax", "2003", "--exact-certificate"]);
    assert_eq!(code(&ellsurf(&args)), 0);
    let s = read_json(&dir.path().join("nagao-summary.json"));
    assert_eq!(s["certificate"]["passed"], 299);
    assert!(s["certificate"]["pass_rate"].as_f64().unwrap() >= 0.99);
    assert_eq!(s["max_abs_deviation_good_primes"], "0");

    let mut args = vec!["--out-dir", d, "nagao", "--roots"];
    args.extend(roots);
    args.extend(["--form", "weierstrass", "--pmax", "2000"]);
    assert_eq!(code(&ellsurf(&args)), 0);
    let s = read_json(&dir.path().join("nagao-summary.json"));
    let rs = s["rosen_silverman"].as_f64().unwrap();
    assert!((5.5..=6.5).contains(&rs), "{rs}");
    let eps: i64 = s["max_abs_deviation_good_primes"].as_str().unwrap().parse().unwrap();
    assert!(eps <= 12);
}

#[test]
fn certificate_needs_roots() {
    assert_eq!(code(&ellsurf(&["nagao", "--curve", "rank8-quartic", "--pmax", "50", "--exact-certificate"])), 2);
}

#[test]
fn heights_on_catalog_curves() {
    let out = ellsurf(&["heights", "--curve", "dependent10", "--expect-independent", "5"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["independent_count"], 5);
    assert_eq!(v["relations"].as_array().unwrap().len(), 5);

    let v = stdout_json(&ellsurf(&["heights", "--curve", "rank7-quartic"]));
    assert_eq!(v["independent_count"], 7);
    assert_eq!(v["normalization"]["exponent"], 7);
    assert!(v["normalization"]["relative_error"].as_f64().unwrap() < 0.01);

    assert_eq!(code(&ellsurf(&["heights", "--curve", "rank7-quartic", "--expect-independent", "6"])), 1);
}

fn curve_37a(dir: &Path, points: Value) -> String {
    let path = dir.join("curve.json");
    let c = json!({
        "form": "weierstrass",
        "coeffs": [["0"], ["0"], ["1"], ["-1"], ["0"]],
        "points": points,
    });
    fs::write(&path, c.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn heights_find_relation() {
    let dir = tempfile::tempdir().unwrap();
    let file = curve_37a(dir.path(), json!([{ "x": "0", "y": "0" }, { "x": "1", "y": "0" }]));
    let v = stdout_json(&ellsurf(&["heights", "--curve", &file]));
    assert_eq!(v["independent_count"], 1);
    assert_eq!(v["relations"][0]["coeffs"], json!([2, -1]));
    assert_eq!(v["relations"][0]["verified"], true);
}

#[test]
fn off_curve_point_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let file = curve_37a(dir.path(), json!([{ "x": "0", "y": "0" }, { "x": "2", "y": "1" }]));
    let out = ellsurf(&["heights", "--curve", &file]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("point 2"));
}

#[test]
fn precision_from_environment() {
    let run = |bits: &str| {
        Command::new(env!("CARGO_BIN_EXE_ellsurf"))
            .args(["heights", "--curve", "rank6-weierstrass"])
            .env("ELLSURF_PRECISION_BITS", bits)
            .output()
            .unwrap()
    };
    let out = run("96");
    assert_eq!(stdout_json(&out)["precision_bits"], 96);
    assert_eq!(code(&run("8")), 2);
}

#[test]
fn transforms() {
    let v = stdout_json(&ellsurf(&[
        "transform",
        "--mode",
        "depressed",
        "--c",
        "0",
        "--d",
        "0",
        "--e",
        "1",
        "--point",
        "0,1",
    ]));
    assert_eq!(v["g2"], json!({ "num": "1", "den": "1" }));
    assert_eq!(v["g3"], json!({ "num": "0", "den": "1" }));
    assert_eq!(v["point"]["round_trip"], true);

    let out = ellsurf(&["transform", "--mode", "minimal", "--curve", "rank8-quartic", "--specialize", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["alpha"]["num"], "357917711928106838175050781865");
    assert_eq!(v["beta"]["num"], "8790806811671574287759992288018136706011725");
    assert_eq!(v["round_trip"], true);

    let args = [
        "transform",
        "--mode",
        "square-const",
        "--a",
        "1",
        "--b",
        "0",
        "--c",
        "0",
        "--d",
        "-1",
        "--q",
        "2",
        "--point",
        "1,2",
    ];
    let v = stdout_json(&ellsurf(&args));
    assert_eq!(v["point"]["round_trip"], true);

    let bad = ["transform", "--mode", "square-const", "--a", "1", "--b", "0", "--c", "4", "--d", "0", "--q", "0"];
    assert_eq!(code(&ellsurf(&bad)), 2);
    assert_eq!(code(&ellsurf(&["transform", "--mode", "depressed", "--c", "1"])), 2);
}

#[test]
fn manifest_replay() {
    let dir = tempfile::tempdir().unwrap();
    let run_dir = dir.path().join("run");
    let out = ellsurf(&["--out-dir", run_dir.to_str().unwrap(), "heights", "--curve", "rank7-quartic"]);
    assert_eq!(code(&out), 0);
    let manifest = run_dir.join("manifest.json");
    let m = read_json(&manifest);
    assert_eq!(m["command"], "heights");
    assert_eq!(m["arguments"], json!(["heights", "--curve", "rank7-quartic"]));
    assert_eq!(m["outputs"][0]["name"], "heights.json");

    let replay = ellsurf(&["replay", manifest.to_str().unwrap()]);
    assert_eq!(code(&replay), 0);
    assert_eq!(stdout_json(&replay)["identical"], true);

    let mut tampered = m.clone();
    tampered["outputs"][0]["sha256"] = json!("00");
    let bad = dir.path().join("tampered.json");
    fs::write(&bad, tampered.to_string()).unwrap();
    let replay = ellsurf(&["replay", bad.to_str().unwrap()]);
    assert_eq!(code(&replay), 1);
    assert_eq!(stdout_json(&replay)["identical"], false);
}
