//! End-to-end tests of the `arcx` binary: exit codes, determinism, and the
//! certificate round trip, all through the real command-line interface.

use std::process::{Command, Output};

fn arcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

#[test]
fn surface_info_reports_the_triangulation() {
    let out = arcx(&["surface", "info", "--genus", "0", "--punctures", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("genus 0, 6 marked points"), "{text}");
    assert!(text.contains("8 triangles, 12 edges"), "{text}");
    assert!(text.contains("euler characteristic: 2"), "{text}");
}

#[test]
fn star_graph_has_a_disconnected_matching_complex() {
    let out = arcx(&["graph", "check", "star5", "--genus", "0"]);
    assert_eq!(out.status.code(), Some(0), "reports exit 0 even when negative");
    let text = stdout(&out);
    assert!(text.contains("matching complex: disconnected"), "{text}");
}

#[test]
fn complete_graph_has_a_connected_hyperbolic_matching_complex() {
    let out = arcx(&["graph", "check", "k6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("matching complex: connected"), "{text}");
    assert!(text.contains("hyperbolicity: hyperbolic"), "{text}");
}

#[test]
fn too_few_punctures_is_an_input_error() {
    let out = arcx(&["graph", "check", "k6", "--punctures", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(
        err.contains("at least as many punctures as the graph has vertices"),
        "{err}"
    );
}

#[test]
fn malformed_json_is_an_input_error_with_a_location() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"num_vertices\": 3, \"edges\": [[0,1]").expect("write");
    let out = arcx(&["graph", "check", path.to_str().expect("utf-8 path")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line"), "location missing: {err}");
}

#[test]
fn unknown_builtin_graph_is_rejected() {
    let out = arcx(&["graph", "check", "q7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_weight_bound_is_rejected() {
    let out = arcx(&[
        "ball", "--graph", "k6", "--base", "edge:0", "--weight", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at least 1"));
}

#[test]
fn seeded_runs_are_byte_identical_and_seed_sensitive() {
    let args = [
        "verify",
        "bridge-shared",
        "--graph",
        "k6",
        "--samples",
        "12",
        "--seed",
        "7",
    ];
    let first = arcx(&args);
    let second = arcx(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "same seed must reproduce bytes");

    let mut other = args;
    other[7] = "8";
    let third = arcx(&other);
    assert_eq!(third.status.code(), Some(0));
    assert_ne!(first.stdout, third.stdout, "a new seed must change the sample");
}

#[test]
fn connect_writes_a_certificate_that_validates() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cert = dir.path().join("cert.json");
    let out = arcx(&[
        "connect", "--graph", "k6", "--from", "join:0-3", "--to", "join:1-4",
        "--out", cert.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(cert.exists());

    let out = arcx(&["validate", cert.to_str().expect("utf-8 path"), "--graph", "k6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("certificate valid"));
}

#[test]
fn certificate_with_a_bogus_step_fails_validation() {
    // Edges 2 and 0 of the six-punctured sphere share the marked point 1,
    // so they are not adjacent in the matching complex.
    let dir = tempfile::tempdir().expect("tempdir");
    let cert = dir.path().join("cert.json");
    std::fs::write(
        &cert,
        r#"{"complex":"matching","arcs":[{"kind":"edge","edge":2},{"kind":"edge","edge":0}],"steps":["direct"]}"#,
    )
    .expect("write");
    let out = arcx(&["validate", cert.to_str().expect("utf-8 path"), "--graph", "k6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("verification failed"), "{}", stderr(&out));
}

#[test]
fn guess_checker_is_honest_about_the_tree_fixture() {
    let strict = arcx(&["verify", "guess", "--fixture", "tree", "--size", "7", "--m", "0"]);
    assert_eq!(strict.status.code(), Some(1), "diameter-1 families fail at 0");
    let relaxed = arcx(&["verify", "guess", "--fixture", "tree", "--size", "7", "--m", "1"]);
    assert_eq!(relaxed.status.code(), Some(0));
}

#[test]
fn cycle_fixture_passes_at_two() {
    let out = arcx(&["verify", "guess", "--fixture", "cycle", "--size", "6", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("both hypotheses hold"));
}

#[test]
fn dot_export_emits_graphviz() {
    let out = arcx(&["graph", "check", "c6", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("graph {"), "{text}");
    assert!(text.contains("--"), "{text}");

    let out = arcx(&[
        "ball", "--graph", "k6", "--base", "join:0-3", "--radius", "1",
        "--format", "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("graph {"));
}

#[test]
fn ball_report_counts_shells() {
    let out = arcx(&[
        "ball", "--graph", "k6", "--base", "join:0-3", "--radius", "2", "--weight", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("120 vertices"), "{text}");
    assert!(text.contains("distance 1: 27 arcs"), "{text}");
}

#[test]
fn unicorn_lists_a_verified_sequence() {
    // On the five-punctured sphere the weight-1 arc from 2 to 4 below
    // crosses the edge joining 0 and 1 exactly once.
    let dir = tempfile::tempdir().expect("tempdir");
    let arc = dir.path().join("arc.json");
    std::fs::write(
        &arc,
        r#"{"kind":"path","start_tri":0,"start_corner":2,"exits":[{"tri":0,"side":2}],"end_corner":2}"#,
    )
    .expect("write");
    let out = arcx(&[
        "unicorn", "--punctures", "5",
        "--from", arc.to_str().expect("utf-8 path"), "--from-point", "2",
        "--to", "join:0-1", "--to-point", "0",
        "--genus", "0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("consecutive elements disjoint: true"), "{text}");
}
