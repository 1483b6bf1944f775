//! End-to-end tests of the command-line surface: exit codes, JSON round
//! trips, and the file outputs.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_su2abel"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("su2abel-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

const MOTEGI: &str =
    r#"{"m1":{"p":[2,3],"q":[1,-1]},"m2":{"p":[2,3],"q":[1,-1]},"phi":[[0,1],[1,0]]}"#;
const KLEIN: &str =
    r#"{"m1":{"p":[2,2],"q":[1,1]},"m2":{"p":[2,2],"q":[1,1]},"phi":[[0,1],[1,0]]}"#;

#[test]
fn decide_reports_abelian_with_exit_zero() {
    let file = write_temp("motegi.json", MOTEGI);
    let out = run(&["decide", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["su2_abelian"], Value::Bool(true));
    assert_eq!(v["class"], Value::from(7));
    assert_eq!(v["deltas"]["h1_h2"], Value::from(1));
    assert!(v["witness"].is_null());
}

#[test]
fn decide_reports_not_abelian_with_exit_one() {
    let file = write_temp("klein.json", KLEIN);
    let out = run(&["decide", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["su2_abelian"], Value::Bool(false));
    assert!(v["class"].is_null());
    assert_eq!(v["witness"]["sets"][0], "P1");
}

#[test]
fn emitted_manifold_round_trips() {
    let file = write_temp("roundtrip.json", MOTEGI);
    let out = run(&["decide", file.to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let echoed = serde_json::to_string(&v["manifold"]).unwrap();
    let reparsed = write_temp("reparsed.json", &echoed);
    let again = run(&["decide", reparsed.to_str().unwrap()]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn malformed_input_exits_two() {
    let file = write_temp("bad.json", r#"{"m1":{"p":[2,3],"q":[1,1]},"phi":"nope"}"#);
    let out = run(&["decide", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invalid manifold"), "stderr: {err}");

    let invalid_det = write_temp(
        "baddet.json",
        r#"{"m1":{"p":[2,3],"q":[1,1]},"m2":{"p":[2,3],"q":[1,1]},"phi":[[1,0],[0,1]]}"#,
    );
    let out = run(&["decide", invalid_det.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn intervals_prints_the_split_set() {
    let out = run(&["intervals", "4", "4", "--parity", "pi"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(-2, 0) ∪ (0, 2)"), "got: {text}");
}

#[test]
fn torus_knot_prints_exact_presentation() {
    let out = run(&["torus-knot", "2", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["p"], serde_json::json!([2, 3]));
    assert_eq!(v["q"], serde_json::json!([1, -1]));

    let out = run(&["torus-knot", "2", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_gluing_realizes_deltas() {
    let file = write_temp(
        "pair.json",
        r#"{"m1":{"p":[2,3],"q":[1,1]},"m2":{"p":[2,3],"q":[1,1]}}"#,
    );
    let out = run(&["build-gluing", file.to_str().unwrap(), "--", "-1", "-1"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["manifold"]["phi"], serde_json::json!([[1, -1], [0, -1]]));
    assert_eq!(v["deltas"]["lambda1_h2"], Value::from(1));

    // unsolvable congruence
    let out = run(&["build-gluing", file.to_str().unwrap(), "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no such gluing"));
}

#[test]
fn witness_emits_a_verified_representation() {
    let file = write_temp("klein_w.json", KLEIN);
    let out = run(&["witness", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["residual"].as_f64().unwrap() < 1e-9);
    assert!(v["irreducibility"].as_f64().unwrap() > 1e-3);
    assert_eq!(v["images"].as_array().unwrap().len(), 6);
}

#[test]
fn sets_reports_emptiness_verdicts() {
    let file = write_temp("sets.json", MOTEGI);
    let out = run(&["sets", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["h1_h2", "h1_a2", "a1_h2", "p1_p2"] {
        assert_eq!(v[key]["empty"], Value::Bool(true), "{key}");
    }
    assert_eq!(v["congruences"], Value::Bool(true));
}

#[test]
fn plot_writes_svg_and_sidecar() {
    let dir = std::env::temp_dir().join("su2abel-cli-tests");
    let file = write_temp("plot_in.json", MOTEGI);
    let out_path = dir.join("picture.svg");
    let out = run(&[
        "plot",
        file.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("#ff8c00"), "H arcs missing");
    assert!(svg.contains("#8b4513"), "overlay missing");
    let sidecar: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("picture.json")).unwrap()).unwrap();
    assert!(sidecar["main"]["h_segments"].is_array());

    // a bare piece also plots, without an overlay
    let piece = write_temp("piece.json", r#"{"p":[3,3],"q":[1,1]}"#);
    let out = run(&[
        "plot",
        piece.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sweep_emits_csv() {
    let out = run(&["sweep", "--max-p", "3", "--max-entry", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("p1,q1,p2,q2,"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows
        .iter()
        .all(|r| r.split(',').count() == header.split(',').count()));
}
