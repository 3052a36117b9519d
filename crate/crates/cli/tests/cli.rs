//! End-to-end tests against the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etabound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_spec(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("etabound-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

const QUAD_SPEC: &str = r#"{
  "algebra": {"kind": "complex-hermitian", "m": 3},
  "operator": {
    "type": "quad",
    "a": {"matrix": [[1.0, [0.5, -0.25], 0.0],
                     [[0.5, 0.25], -0.5, [0.0, 1.0]],
                     [0.0, [0.0, -1.0], 2.0]]}
  },
  "config": {"seed": 3, "n_frames": 10}
}"#;

#[test]
fn vec_join_frozen() {
    let out = run(&["vec", "join", "[1,0]", "[0.6,0.6]"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[1.0, 0.2]"), "{}", stdout(&out));
}

#[test]
fn vec_winf_frozen() {
    let out = run(&["vec", "winf", "[2,0]", "[1,1]", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"], serde_json::json!([1.0, 1.0]));
}

#[test]
fn vec_wmaj_exit_codes() {
    let yes = run(&["vec", "wmaj", "[1,1]", "[2,0]"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).contains("true"));
    let no = run(&["vec", "wmaj", "[2,0]", "[1,1]"]);
    assert_eq!(no.status.code(), Some(1));
    let bad = run(&["vec", "wmaj", "[2,0]", "oops"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn eta_quad_is_exact_square_spectrum() {
    use etabound::algebra::Element;
    use etabound::linalg::CMat;
    use num_complex::Complex64;

    let path = write_spec("quad.json", QUAD_SPEC);
    let out = run(&["eta", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["eta"]["exact"], serde_json::json!(true));

    // independent expectation: lambda(a^2) for the same matrix literal
    let mut m = CMat::zeros(3, 3);
    m.set(0, 0, Complex64::new(1.0, 0.0));
    m.set(0, 1, Complex64::new(0.5, -0.25));
    m.set(1, 0, Complex64::new(0.5, 0.25));
    m.set(1, 1, Complex64::new(-0.5, 0.0));
    m.set(1, 2, Complex64::new(0.0, 1.0));
    m.set(2, 1, Complex64::new(0.0, -1.0));
    m.set(2, 2, Complex64::new(2.0, 0.0));
    let a = Element::from_herm_matrix(&m).unwrap();
    let expect = a.square().eigenvalues();
    let got: Vec<f64> = v["eta"]["upper"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (g, e) in got.iter().zip(&expect) {
        assert!((g - e).abs() < 1e-9, "{got:?} vs {expect:?}");
    }
}

#[test]
fn check_below_envelope_finds_witness() {
    let path = write_spec("quad2.json", QUAD_SPEC);
    let out = run(&[
        "check",
        path.to_str().unwrap(),
        "--q",
        "[0.2,0.1,0.1]",
        "--quick",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["outcome"]["status"], serde_json::json!("witness"));
    assert!(v["outcome"]["witness"]["coords"].as_array().unwrap().len() == 9);
}

#[test]
fn classify_scalar_multiple() {
    let spec = r#"{
      "algebra": {"kind": "complex-hermitian", "m": 2},
      "operator": {"type": "scale", "alpha": 2.5, "inner": {"type": "identity"}}
    }"#;
    let path = write_spec("scaled.json", spec);
    let out = run(&["classify", path.to_str().unwrap(), "--quick", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let t = v["classification"]["scalar_ds"].as_f64().unwrap();
    assert!((t - 2.5).abs() < 1e-10);
    assert_eq!(v["classification"]["is_ds"], serde_json::json!(false));
}

#[test]
fn malformed_spec_exits_2() {
    let path = write_spec("bad.json", "{ not json");
    let out = run(&["eta", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line"), "error should carry a location: {err}");
}

#[test]
fn dimension_mismatch_exits_2() {
    let spec = r#"{
      "algebra": {"kind": "complex-hermitian", "m": 3},
      "operator": {"type": "dense", "matrix": [[1.0, 0.0], [0.0, 1.0]]}
    }"#;
    let path = write_spec("mismatch.json", spec);
    let out = run(&["eta", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let path = write_spec("quad3.json", QUAD_SPEC);
    let strip = |s: &str| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let a = run(&["eta", path.to_str().unwrap(), "--json", "--seed", "11"]);
    let b = run(&["eta", path.to_str().unwrap(), "--json", "--seed", "11"]);
    assert_eq!(strip(&stdout(&a)), strip(&stdout(&b)));
}

#[test]
fn lyapunov_dense_spec_round_trip() {
    // spin algebra via natural coordinates and a generic dense operator
    let spec = r#"{
      "algebra": {"kind": "spin", "dim": 3},
      "operator": {"type": "lyapunov", "a": {"spin": [1.0, 0.5, -0.25]}}
    }"#;
    let path = write_spec("spin.json", spec);
    let out = run(&["eta", path.to_str().unwrap(), "--quick", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["eta"]["exact"], serde_json::json!(true));
    // eta(L_a) = lambda(|a|) = |1 ± sqrt(0.3125)| sorted
    let r = (0.3125f64).sqrt();
    let expect = [1.0 + r, 1.0 - r];
    let got: Vec<f64> = v["eta"]["upper"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    for (g, e) in got.iter().zip(&expect) {
        assert!((g - e).abs() < 1e-12, "{got:?}");
    }
}
