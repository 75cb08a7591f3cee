use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use tomokit::frames::PolarGrid;
use tomokit::states::{State, StateSpec};
use tomokit::tomography::{evaluate_field, FieldOptions, TomogramField};

const GAUSSIAN: &str = r#"{"type": "gaussian", "x0": 0.5, "sigma0": 0.8, "k0": 1.0}"#;
const BOX: &str = r#"{"type": "box", "a": -1, "b": 1, "kappa": [1.5, 0]}"#;
const PLANE_SHUTTER: &str = r#"{"type": "shutter", "x0": 0, "k": [1, 0], "side": "right"}"#;
const MAXENT: &str = r#"{"a": [0.7071067811865476, 0], "b": [0, 0.7071067811865476], "c_km": [0, 0], "c_lj": [0, 0]}"#;

fn tomokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tomokit")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gaussian_tomogram_csv() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "g.json", GAUSSIAN);
    let out = stdout(&tomokit(&[
        "tomogram",
        "--state",
        s(&state),
        "--theta-count",
        "64",
        "--x",
        "-8",
        "8",
        "--x-count",
        "401",
    ]));
    assert!(!out.contains('\r'));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("theta,X,W"));
    let mut rows: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 3);
        rows.entry(cols[0].to_string()).or_default().push((cols[1].parse().unwrap(), cols[2].parse().unwrap()));
    }
    assert_eq!(rows.len(), 64);
    for row in rows.values() {
        assert_eq!(row.len(), 401);
        let dx = row[1].0 - row[0].0;
        let sum: f64 = row.iter().map(|r| r.1).sum::<f64>() * dx;
        assert!((sum - 1.0).abs() < 1e-4, "{sum}");
    }
}

#[test]
fn output_is_independent_of_worker_count() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "box.json", BOX);
    let run = |jobs: &str| {
        let path = dir.path().join(format!("out{jobs}.csv"));
        let o =
            tomokit(&["tomogram", "--state", s(&state), "--theta-count", "12", "--jobs", jobs, "--output", s(&path)]);
        assert!(o.status.success());
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn json_round_trips() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "g.json", GAUSSIAN);
    let out = stdout(&tomokit(&[
        "tomogram",
        "--state",
        s(&state),
        "--theta-count",
        "8",
        "--x",
        "-4",
        "4",
        "--x-count",
        "21",
        "--time",
        "0.7",
        "--format",
        "json",
    ]));
    let field: TomogramField = serde_json::from_str(&out).unwrap();
    let st = State::new(StateSpec::from_json(GAUSSIAN).unwrap()).unwrap();
    let frames = PolarGrid::new(8).unwrap().frames().unwrap();
    let expected =
        evaluate_field(&st, &frames, &field.x_grid, &FieldOptions { time: 0.7, ..Default::default() }).unwrap();
    // the JSON text is reproduced exactly after a parse
    assert_eq!(serde_json::to_string_pretty(&field).unwrap().trim(), out.trim());
    assert!(field.normalized);
    assert_eq!(field.time, 0.7);
    for (a, b) in field.values.iter().flatten().zip(expected.values.iter().flatten()) {
        assert!((a - b).abs() <= 1e-13 * b.abs().max(1e-300), "{a} {b}");
    }
}

#[test]
fn plane_waves_are_flagged() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "s.json", PLANE_SHUTTER);
    let out = stdout(&tomokit(&[
        "tomogram",
        "--state",
        s(&state),
        "--theta-count",
        "4",
        "--x-count",
        "400",
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["normalized"], false);
    // the default grid contains X = 1 on the momentum axis, where the density has a delta peak
    let o = tomokit(&["tomogram", "--state", s(&state), "--theta-count", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(diagnostic(&o)["error"], "domain");
}

#[test]
fn explicit_frames() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "g.json", GAUSSIAN);
    let out = stdout(&tomokit(&[
        "tomogram",
        "--state",
        s(&state),
        "--mu",
        "1,-0.5",
        "--nu",
        "0,2",
        "--x",
        "-1",
        "1",
        "--x-count",
        "3",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "mu,nu,X,W");
    assert_eq!(lines.len(), 7);
    assert!(lines[4].starts_with("-0.5,2.0,-1.0,"));
}

#[test]
fn verify_box_passes() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "box.json", BOX);
    let o = tomokit(&["verify", "--state", s(&state)]);
    let out = stdout(&o);
    assert!(out.lines().count() > 4);
    assert!(out.lines().skip(1).all(|l| l.contains(",PASS,")), "{out}");
}

#[test]
fn bipartite_entropies() {
    let dir = TempDir::new().unwrap();
    let bp = write(&dir, "maxent.json", MAXENT);
    let out = stdout(&tomokit(&["entropy", "--bipartite", s(&bp), "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["linear_entropy"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["von_neumann_entropy"].as_f64().unwrap() - std::f64::consts::LN_2).abs() < 1e-12);
    let out = stdout(&tomokit(&["verify", "--bipartite", s(&bp)]));
    assert!(out.lines().skip(1).all(|l| l.contains(",PASS,")), "{out}");
}

#[test]
fn shannon_entropy_per_frame() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "osc.json", r#"{"type": "oscillator", "coeffs": {"0": [1, 0]}}"#);
    let out = stdout(&tomokit(&["entropy", "--state", s(&state), "--theta-count", "4", "--x-count", "801"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "theta,S");
    // ground state: every frame is a Gaussian of variance 1/2
    let expected = 0.5 * (std::f64::consts::PI * std::f64::consts::E).ln();
    for l in &lines[1..] {
        let v: f64 = l.split(',').nth(1).unwrap().parse().unwrap();
        assert!((v - expected).abs() < 1e-6, "{l}");
    }
}

#[test]
fn reduced_tomogram_of_bipartite_state() {
    let dir = TempDir::new().unwrap();
    let spec = r#"{"a": [0.6, 0], "b": [0, 0.8], "c_km": [0, 0], "c_lj": [0, 0],
        "factors": {"j": {"type": "oscillator", "coeffs": {"0": [1, 0]}},
                    "l": {"type": "oscillator", "coeffs": {"1": [1, 0]}}}}"#;
    let bp = write(&dir, "bp.json", spec);
    let out = stdout(&tomokit(&["tomogram", "--bipartite", s(&bp), "--theta-count", "4", "--format", "json"]));
    let field: TomogramField = serde_json::from_str(&out).unwrap();
    field.check(1e-4).unwrap();
}

#[test]
fn wigner_csv() {
    let dir = TempDir::new().unwrap();
    let state = write(&dir, "g.json", GAUSSIAN);
    let out = stdout(&tomokit(&["wigner", "--state", s(&state), "--q", "-1", "1", "--q-count", "3", "--p-count", "2"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "q,p,W");
    assert_eq!(lines.len(), 7);
}

fn diagnostic(o: &Output) -> serde_json::Value {
    serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap()
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"type": "gaussian", "sigma0": -1}"#);
    let o = tomokit(&["tomogram", "--state", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(diagnostic(&o)["error"], "invalid_spec");

    let o = tomokit(&["tomogram", "--state", s(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));

    let unnormalized = write(&dir, "bp.json", r#"{"a": [1, 0], "b": [1, 0], "c_km": [0, 0], "c_lj": [0, 0]}"#);
    assert_eq!(tomokit(&["entropy", "--bipartite", s(&unnormalized)]).status.code(), Some(2));

    let g = write(&dir, "g.json", GAUSSIAN);
    let o = Command::new(env!("CARGO_BIN_EXE_tomokit"))
        .args(["tomogram", "--state", s(&g), "--oracle", "--theta-count", "2", "--x-count", "3"])
        .env("TOMOKIT_MAX_QUAD_EVALS", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(diagnostic(&o)["error"], "non_convergence");
}
