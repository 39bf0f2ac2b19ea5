//! End-to-end checks of the command-line interface: output formats, exit
//! codes and schema agreement between text and JSON modes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use npsurf::fixtures;
use npsurf::koszul::BettiTable;
use npsurf::verdict::{Outcome, Verdict};

fn npsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_npsurf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn npsurf_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_npsurf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn betti_text_grid_for_twisted_cubic() {
    let module = stdout(&npsurf(&["fixtures", "rnc", "3", "--qmax", "3"]));
    let out = npsurf_stdin(&["betti", "-", "--pmax", "3", "--qlo", "0", "--qhi", "2"], &module);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(
        text,
        "     p=0  p=1  p=2  p=3\n\
         q=0    1    \u{b7}    \u{b7}    \u{b7}\n\
         q=1    \u{b7}    3    2    \u{b7}\n\
         q=2    \u{b7}    \u{b7}    \u{b7}    \u{b7}\n"
    );
}

#[test]
fn betti_json_round_trips_and_agrees_with_text() {
    let module = stdout(&npsurf(&["fixtures", "rnc", "3", "--qmax", "3"]));
    let json_out = npsurf_stdin(
        &["betti", "-", "--pmax", "3", "--qlo", "0", "--qhi", "2", "--format", "json"],
        &module,
    );
    assert_eq!(code(&json_out), 0);
    let betti = BettiTable::from_json(stdout(&json_out).trim()).unwrap();
    assert_eq!(betti.dim(1, 1), Some(3));
    assert_eq!(betti.dim(2, 1), Some(2));
    assert_eq!(betti.dim(0, 0), Some(1));
    let total: usize = betti.cells().map(|(_, v)| v).sum();
    assert_eq!(total, 6);

    let csv_out = npsurf_stdin(
        &["betti", "-", "--pmax", "3", "--qlo", "0", "--qhi", "2", "--format", "csv"],
        &module,
    );
    let csv = stdout(&csv_out);
    assert!(csv.starts_with("p,q,dim\n"));
    assert!(csv.contains("1,1,3\n"));
    assert!(csv.contains("2,1,2\n"));
}

#[test]
fn betti_output_is_deterministic() {
    let module = stdout(&npsurf(&["fixtures", "veronese", "2", "2", "--qmax", "3"]));
    let args = ["betti", "-", "--pmax", "3", "--qlo", "0", "--qhi", "2", "--format", "json"];
    let first = npsurf_stdin(&args, &module);
    let second = npsurf_stdin(&args, &module);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn malformed_module_exits_two_with_field_path() {
    let bad = r#"{"n": 4, "q_min": 0, "q_max": 3, "dims": [1, 4, 7], "mult": []}"#;
    let out = npsurf_stdin(&["betti", "-", "--pmax", "1", "--qlo", "0", "--qhi", "1"], bad);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("dims"), "stderr: {err}");
}

#[test]
fn np_holds_and_fails_exit_codes() {
    let module = stdout(&npsurf(&["fixtures", "rnc", "4", "--qmax", "4"]));
    let out = npsurf_stdin(&["np", "-", "--p", "2", "--qbound", "3"], &module);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("holds"));

    // module generated in degree 2: drop the degree-0 piece and one
    // degree-1 basis point of the twisted-cubic configuration
    let points = vec![vec![0], vec![1], vec![2], vec![3]];
    let degenerate = fixtures::deleted_generator_module(&points, 3, 4)
        .unwrap()
        .to_json();
    let out = npsurf_stdin(&["np", "-", "--p", "1", "--qbound", "3"], &degenerate);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("fails at K_{0,2}"), "{}", stdout(&out));
}

#[test]
fn np_default_qbound_carries_note() {
    let module = stdout(&npsurf(&["fixtures", "rnc", "3", "--qmax", "4"]));
    let out = npsurf_stdin(&["np", "-", "--p", "1"], &module);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("q_bound defaulted to 3"));
    let json = npsurf_stdin(&["np", "-", "--p", "1", "--format", "json"], &module);
    let value: serde_json::Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert_eq!(value["holds"], serde_json::Value::Bool(true));
    assert!(value["notes"][0].as_str().unwrap().contains("defaulted"));
}

#[test]
fn np_rejects_meaningless_window() {
    let module = stdout(&npsurf(&["fixtures", "rnc", "3", "--qmax", "4"]));
    let out = npsurf_stdin(&["np", "-", "--p", "1", "--qbound", "1"], &module);
    assert_eq!(code(&out), 2);
}

#[test]
fn fixture_dimensions_match_counts() {
    let rnc = stdout(&npsurf(&["fixtures", "rnc", "3", "--qmax", "3"]));
    let value: serde_json::Value = serde_json::from_str(rnc.trim()).unwrap();
    assert_eq!(value["dims"], serde_json::json!([1, 4, 7, 10]));

    let veronese = stdout(&npsurf(&["fixtures", "veronese", "2", "2", "--qmax", "2"]));
    let value: serde_json::Value = serde_json::from_str(veronese.trim()).unwrap();
    assert_eq!(value["dims"], serde_json::json!([1, 6, 15]));
}

#[test]
fn points_fixture_rejects_duplicates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.txt");
    std::fs::write(&path, "0 0\n1 2\n0 0\n").unwrap();
    let out = npsurf(&["fixtures", "points", path.to_str().unwrap(), "--qmax", "2"]);
    assert_eq!(code(&out), 2);

    std::fs::write(&path, "0 0\n1 2\n2 1\n").unwrap();
    let out = npsurf(&["fixtures", "points", path.to_str().unwrap(), "--qmax", "2"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn surface_verdict_double_cover_pattern() {
    let fails = npsurf(&[
        "surface", "--fixture", "<2>", "--kind", "k3", "-L", "3", "verdict", "--p", "2",
        "--theorem", "k3",
    ]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).contains("fails"));

    let holds = npsurf(&[
        "surface", "--fixture", "U", "--kind", "k3", "-L", "5,15", "verdict", "--p", "1",
        "--theorem", "a",
    ]);
    assert_eq!(code(&holds), 0);
    assert!(stdout(&holds).contains("holds"));
}

#[test]
fn surface_verdict_json_schema() {
    let out = npsurf(&[
        "surface", "--fixture", "U", "--kind", "k3", "-L", "1,23", "verdict", "--p", "1",
        "--theorem", "a", "--format", "json",
    ]);
    assert_eq!(code(&out), 1);
    let verdict: Verdict = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(verdict.outcome, Outcome::FailsNp);
    assert_eq!(verdict.witnesses[0].coords, vec![0, 1]);
    assert_eq!(verdict.witnesses[0].degree, 1);
}

#[test]
fn surface_file_input_and_flag_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("surface.json");
    std::fs::write(
        &path,
        r#"{"kind": "enriques", "gram": [[0,1],[1,0]], "L": [2,3],
           "flags": {"ample": true, "globally_generated": true}}"#,
    )
    .unwrap();
    let out = npsurf(&["surface", "--file", path.to_str().unwrap(), "clifford"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("2"));

    // same surface without the globally-generated assertion is refused
    std::fs::write(
        &path,
        r#"{"kind": "enriques", "gram": [[0,1],[1,0]], "L": [2,3]}"#,
    )
    .unwrap();
    let out = npsurf(&["surface", "--file", path.to_str().unwrap(), "clifford"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("globally_generated"), "{err}");
}

#[test]
fn surface_kind_verb_mismatch_is_usage_error() {
    let out = npsurf(&[
        "surface", "--fixture", "U", "--kind", "k3", "-L", "2,3", "clifford",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn surface_enriques_verdict_examples() {
    let holds = npsurf(&[
        "surface", "--fixture", "U+E8(-1)", "--kind", "enriques", "-L",
        "3,8,0,0,0,0,0,0,0,0", "verdict", "--p", "0", "--format", "json",
    ]);
    assert_eq!(code(&holds), 0);
    let verdict: Verdict = serde_json::from_str(stdout(&holds).trim()).unwrap();
    assert_eq!(verdict.outcome, Outcome::HoldsNp);
    assert_eq!(verdict.conditional_on.as_deref(), Some("GL-secant"));

    let fails = npsurf(&[
        "surface", "--fixture", "U+E8(-1)", "--kind", "enriques", "-L",
        "1,9,0,0,0,0,0,0,0,0", "verdict", "--p", "0",
    ]);
    assert_eq!(code(&fails), 1);

    let clifford = npsurf(&[
        "surface", "--fixture", "U+E8(-1)", "--kind", "enriques", "-L",
        "2,3,0,0,0,0,0,0,0,0", "clifford", "--format", "json",
    ]);
    assert_eq!(code(&clifford), 0);
    let value: serde_json::Value = serde_json::from_str(stdout(&clifford).trim()).unwrap();
    assert_eq!(value["clifford_index"], serde_json::json!(2));
}

#[test]
fn surface_isotropic_listing() {
    let out = npsurf(&[
        "surface", "--fixture", "U", "--kind", "k3", "-L", "2,3", "isotropic", "--maxdeg", "3",
        "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("degree,self_int,coords\n"));
    assert!(text.contains("2,0,0 1"));
    assert!(text.contains("3,0,1 0"));
}

#[test]
fn surface_chain_and_seshadri() {
    let out = npsurf(&["surface", "chain", "1", "2", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("4"));

    let out = npsurf(&["surface", "chain", "--format", "json", "1", "1"]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["negative_self_intersection"], serde_json::json!(2));

    let out = npsurf(&[
        "surface", "--fixture", "U", "--kind", "k3", "-L", "6,6", "seshadri", "--p", "2",
        "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["certified"], serde_json::Value::Bool(true));
}

#[test]
fn mukai_exit_codes() {
    let fails = npsurf(&[
        "surface", "--fixture", "<2>", "--kind", "k3", "-L", "1", "mukai", "--m", "3", "--p", "2",
    ]);
    assert_eq!(code(&fails), 1);
    let holds = npsurf(&[
        "surface", "--fixture", "U", "--kind", "k3", "-L", "1,1", "mukai", "--m", "5", "--p", "2",
    ]);
    assert_eq!(code(&holds), 0);
    let refused = npsurf(&[
        "surface", "--fixture", "U", "--kind", "k3", "-L", "1,1", "mukai", "--m", "9", "--p", "2",
    ]);
    assert_eq!(code(&refused), 2);
}

#[test]
fn text_and_json_agree_on_np_content() {
    let module = stdout(&npsurf(&["fixtures", "rnc", "5", "--qmax", "4"]));
    let text = npsurf_stdin(&["np", "-", "--p", "3", "--qbound", "3"], &module);
    let json = npsurf_stdin(&["np", "-", "--p", "3", "--qbound", "3", "--format", "json"], &module);
    assert_eq!(code(&text), code(&json));
    let value: serde_json::Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    let holds_in_text = stdout(&text).contains("holds");
    assert_eq!(value["holds"].as_bool().unwrap(), holds_in_text);
}
