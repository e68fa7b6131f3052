use std::path::PathBuf;
use std::process::{Command, Output};

use cgate_cli::commands::has_counterexample;
use cgate_cli::report::{ReportDocument, Results};

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(rel)
        .display()
        .to_string()
}

fn cgate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgate")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, ReportDocument) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = cgate(&full);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc = ReportDocument::from_json(&stdout)
        .unwrap_or_else(|e| panic!("{e}\nstderr: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), doc)
}

#[test]
fn analyze_rep3() {
    let (code, doc) = report(&["analyze-code", &corpus("codes/rep3.json")]);
    assert_eq!(code, 0);
    let Results::Code(r) = &doc.results else { panic!("wrong kind") };
    assert_eq!((r.n, r.k, r.d), (3, 1, 3));
    assert_eq!(r.logical_x, ["XXX"]);
    assert_eq!(r.logical_z, ["ZII"]);
    assert!(r.x_rule.passed() && r.x_rule.exhaustive);
    assert!(r.isometry.as_ref().unwrap().passed());
    assert_eq!(doc.tolerance, 1e-9);
}

#[test]
fn analyze_rep5_and_422() {
    let (_, doc) = report(&["analyze-code", &corpus("codes/rep5.json")]);
    let Results::Code(r) = &doc.results else { panic!() };
    assert_eq!(r.d, 5);
    assert_eq!(r.x_rule.subsets_checked, 30);
    let (_, doc) = report(&["analyze-code", &corpus("codes/code422.json")]);
    let Results::Code(r) = &doc.results else { panic!() };
    assert_eq!((r.n, r.k, r.d), (4, 2, 2));
}

#[test]
fn dependent_stabilizers_rejected() {
    let out = cgate(&["analyze-code", &corpus("codes/dependent.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("linearly dependent") && err.contains("ZZI, IZZ, ZIZ"), "{err}");
}

#[test]
fn transversal_x_is_logical_x() {
    let (code, doc) = report(&[
        "check-circuit",
        &corpus("circuits/transversal_x_rep3.json"),
        "--layout",
        &corpus("layouts/rep3.json"),
        "--d-z",
        "1",
    ]);
    assert_eq!(code, 0);
    let Results::Circuit(r) = &doc.results else { panic!() };
    assert!(r.verdict.preserves && r.verdict.consistent);
    assert_eq!(r.label.as_deref(), Some("X"));
    assert_eq!(r.spreads.len(), 1);
    let b = r.biased.as_ref().unwrap();
    assert_eq!((b.d_z, b.d_x), (1, 3));
    assert!(b.layered_ok && !b.consecutive_ok);
}

#[test]
fn h_layer_leaves_codespace() {
    let (code, doc) = report(&[
        "check-circuit",
        &corpus("circuits/h_layer_rep3.json"),
        "--layout",
        &corpus("layouts/rep3.json"),
    ]);
    assert_eq!(code, 0);
    let Results::Circuit(r) = &doc.results else { panic!() };
    assert!(!r.verdict.preserves);
    assert!(r.action.is_none());
    let text = cgate(&[
        "check-circuit",
        &corpus("circuits/h_layer_rep3.json"),
        "--layout",
        &corpus("layouts/rep3.json"),
    ]);
    assert!(String::from_utf8(text.stdout).unwrap().contains("does not preserve codespace"));
}

#[test]
fn empty_circuit_is_identity() {
    let (_, doc) = report(&[
        "check-circuit",
        &corpus("circuits/empty_rep3.json"),
        "--layout",
        &corpus("layouts/rep3.json"),
    ]);
    let Results::Circuit(r) = &doc.results else { panic!() };
    assert_eq!(r.label.as_deref(), Some("I"));
    assert_eq!(r.num_gates, 0);
}

#[test]
fn matrix_gate_and_two_blocks() {
    let (_, doc) = report(&[
        "check-circuit",
        &corpus("circuits/phase_matrix_rep3.json"),
        "--layout",
        &corpus("layouts/rep3.json"),
    ]);
    let Results::Circuit(r) = &doc.results else { panic!() };
    assert_eq!(r.label.as_deref(), Some("S"));
    let (_, doc) = report(&[
        "check-circuit",
        &corpus("circuits/transversal_cnot_rep3x2.json"),
        "--layout",
        &corpus("layouts/rep3x2.json"),
    ]);
    let Results::Circuit(r) = &doc.results else { panic!() };
    assert_eq!(r.label.as_deref(), Some("CNOT"));
    assert_eq!(r.verdict.c, 2);
    assert_eq!(r.verdict.layered_bound.value, 1);
}

#[test]
fn too_large_names_the_limit() {
    let out = cgate(&[
        "check-circuit",
        &corpus("circuits/transversal_x_rep3.json"),
        "--layout",
        &corpus("layouts/rep3.json"),
        "--max-qubits",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("circuit qubit count is 3, limit is 2"), "{err}");
}

#[test]
fn layout_size_mismatch_rejected() {
    let out = cgate(&[
        "check-circuit",
        &corpus("circuits/transversal_x_rep3.json"),
        "--layout",
        &corpus("layouts/rep5.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_bundled_specs() {
    for spec in ["specs/rep3.json", "specs/rep3x2_cnot.json"] {
        let (code, doc) = report(&["verify-theorem", &corpus(spec), "--jobs", "2"]);
        assert_eq!(code, 0, "{spec}");
        let Results::Search(r) = &doc.results else { panic!() };
        assert_eq!(r.summary.z_algebra_violations_below_bound, 0);
        assert!(r.summary.first_counterexample.is_none());
        assert!(r.counterexample.is_none());
        assert!(r.summary.preserving_count > 0);
    }
}

#[test]
fn identity_only_spec() {
    let (code, doc) = report(&["verify-theorem", &corpus("specs/identity_only.json")]);
    assert_eq!(code, 0);
    let Results::Search(r) = &doc.results else { panic!() };
    assert_eq!(r.summary.raw_circuits, 1);
    assert_eq!(r.summary.catalogue.len(), 1);
    assert_eq!(r.summary.catalogue[0].label.as_deref(), Some("I"));
}

#[test]
fn out_file_round_trips_and_digests_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let path_str = path.display().to_string();
    let run = || {
        let out = cgate(&["verify-theorem", &corpus("specs/rep3.json"), "--out", &path_str]);
        assert_eq!(out.status.code(), Some(0));
        ReportDocument::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap()
    };
    let first = run();
    let again = ReportDocument::from_json(&first.to_json().unwrap()).unwrap();
    assert_eq!(first, again);
    let second = run();
    assert_eq!(first.input_digests, second.input_digests);
    assert_eq!(first.input_digests.len(), 3);
    assert!(first.input_digests.iter().all(|d| d.sha256.len() == 64));
    assert_eq!(first.results, second.results);
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
}

#[test]
fn every_command_round_trips() {
    let runs: [&[&str]; 3] = [
        &["analyze-code", &corpus("codes/code422.json")],
        &[
            "check-circuit",
            &corpus("circuits/phase_matrix_rep3.json"),
            "--layout",
            &corpus("layouts/rep3.json"),
            "--d-z",
            "1",
        ],
        &["verify-theorem", &corpus("specs/rep3x2_cnot.json")],
    ];
    for args in runs {
        let (_, doc) = report(args);
        assert_eq!(ReportDocument::from_json(&doc.to_json().unwrap()).unwrap(), doc);
    }
}

#[test]
fn exit_codes_for_usage() {
    assert_eq!(cgate(&["--help"]).status.code(), Some(0));
    assert_eq!(cgate(&["--version"]).status.code(), Some(0));
    assert_eq!(cgate(&[]).status.code(), Some(1));
    assert_eq!(cgate(&["analyze-code"]).status.code(), Some(1));
    assert_eq!(cgate(&["analyze-code", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(cgate(&["--tol", "-1", "analyze-code", &corpus("codes/rep3.json")]).status.code(), Some(1));
    let d_x_alone = cgate(&[
        "check-circuit",
        &corpus("circuits/empty_rep3.json"),
        "--layout",
        &corpus("layouts/rep3.json"),
        "--d-x",
        "3",
    ]);
    assert_eq!(d_x_alone.status.code(), Some(1));
}

#[test]
fn inconsistent_verdict_maps_to_counterexample() {
    let (_, mut doc) = report(&[
        "check-circuit",
        &corpus("circuits/transversal_x_rep3.json"),
        "--layout",
        &corpus("layouts/rep3.json"),
    ]);
    assert!(!has_counterexample(&doc));
    let Results::Circuit(r) = &mut doc.results else { panic!() };
    r.verdict.consistent = false;
    assert!(has_counterexample(&doc));
}

#[test]
fn text_output_is_default() {
    let out = cgate(&["analyze-code", &corpus("codes/rep3.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rep3: [3, 1, 3]"));
    assert!(text.contains("X = XXX"));
}
