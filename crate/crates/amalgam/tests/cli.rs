//! The command-line contract: exit codes and file round-trips.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use amalgam::cli::run;
use amalgam::counterexamples::build;
use amalgam::io::{amalgam_from_json, structure_from_json, structure_to_json};

fn cli(args: &[&str]) -> i32 {
    run(args.iter().map(OsString::from).collect())
}

fn export_triple(dir: &Path, name: &str) -> (String, String, String) {
    let (_, t) = build(name).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let c = dir.join("c.json");
    fs::write(&a, structure_to_json(t.a())).unwrap();
    fs::write(&b, structure_to_json(t.b())).unwrap();
    fs::write(&c, structure_to_json(t.c())).unwrap();
    (
        a.to_str().unwrap().to_owned(),
        b.to_str().unwrap().to_owned(),
        c.to_str().unwrap().to_owned(),
    )
}

#[test]
fn check_passes_on_conformant_input() {
    let dir = tempfile::tempdir().unwrap();
    let (a, _, _) = export_triple(dir.path(), "prop42");
    assert_eq!(cli(&["check", &a]), 0);
}

#[test]
fn check_fails_on_axiom_violation() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(
        &file,
        r#"{
            "signature": {"relations": [{"name": "R", "properties": ["reflexive"]}]},
            "domain": ["a"],
            "relations": {},
            "operations": {}
        }"#,
    )
    .unwrap();
    assert_eq!(cli(&["check", file.to_str().unwrap()]), 1);
}

#[test]
fn amalgamate_identity_triple_reproduces_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let (_, t) = build("rem41").unwrap();
    let s = structure_to_json(t.a());
    let f = dir.path().join("s.json");
    fs::write(&f, &s).unwrap();
    let out = dir.path().join("out.json");
    let code = cli(&[
        "amalgamate",
        "--a",
        f.to_str().unwrap(),
        "--b",
        f.to_str().unwrap(),
        "--c",
        f.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (d, _) = amalgam_from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(&d, t.a());
}

#[test]
fn amalgamate_rejects_unsupported_signatures_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = export_triple(dir.path(), "prop42");
    let code = cli(&["amalgamate", "--a", &a, "--b", &b, "--c", &c]);
    assert_eq!(code, 2);
}

#[test]
fn raw_transitive_method_reproduces_the_misapplication() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = export_triple(dir.path(), "rem41");
    let out = dir.path().join("out.json");
    let code = cli(&[
        "amalgamate",
        "--a",
        &a,
        "--b",
        &b,
        "--c",
        &c,
        "--method",
        "transitive",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    // The written amalgam fails its own conformance check: that is the point
    // of the raw constructor.
    let (d, witnesses) = amalgam_from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(!amalgam::check_conformance(&d).all_passed());
    assert!(!witnesses["R"].is_empty());
}

#[test]
fn oracle_exit_codes_follow_the_search_status() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = export_triple(dir.path(), "ex43sap");
    let report = dir.path().join("report.json");
    assert_eq!(
        cli(&[
            "oracle",
            "--a",
            &a,
            "--b",
            &b,
            "--c",
            &c,
            "--mode",
            "sap",
            "-o",
            report.to_str().unwrap()
        ]),
        3
    );
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"exhausted\""));
    assert_eq!(
        cli(&[
            "oracle",
            "--a",
            &a,
            "--b",
            &b,
            "--c",
            &c,
            "--mode",
            "ap",
            "-o",
            report.to_str().unwrap()
        ]),
        0
    );
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"found\""));
    assert_eq!(
        cli(&[
            "oracle",
            "--a",
            &a,
            "--b",
            &b,
            "--c",
            &c,
            "--mode",
            "ap",
            "--budget",
            "1",
            "-o",
            report.to_str().unwrap()
        ]),
        4
    );
}

#[test]
fn counterexample_run_and_list() {
    assert_eq!(cli(&["counterexample", "list"]), 0);
    assert_eq!(cli(&["counterexample", "run", "prop35a"]), 0);
    assert_eq!(cli(&["counterexample", "run", "nonsense"]), 65);
}

#[test]
fn counterexample_export_writes_a_loadable_triple() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("thm31C");
    assert_eq!(
        cli(&[
            "counterexample",
            "export",
            "thm31C",
            "-o",
            out.to_str().unwrap()
        ]),
        0
    );
    for f in ["a.json", "b.json", "c.json"] {
        structure_from_json(&fs::read_to_string(out.join(f)).unwrap()).unwrap();
    }
    let manifest = fs::read_to_string(out.join("manifest.json")).unwrap();
    assert!(manifest.contains("\"ap_fails\""));
}

#[test]
fn fraisse_builds_checks_and_writes_a_stage() {
    let dir = tempfile::tempdir().unwrap();
    let sig = dir.path().join("graphs.json");
    fs::write(
        &sig,
        r#"{"signature": {"relations": [{"name": "E", "properties": ["symmetric", "antireflexive"]}]}, "domain": [], "relations": {}, "operations": {}}"#,
    )
    .unwrap();
    let out = dir.path().join("stage.json");
    let code = cli(&[
        "fraisse",
        "--sig",
        sig.to_str().unwrap(),
        "--steps",
        "30",
        "--seed",
        "5",
        "--check-extension",
        "1",
        "--check-homogeneity",
        "1",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let stage = structure_from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(stage.len(), 30);
}

#[test]
fn export_dot_renders_every_relation() {
    let dir = tempfile::tempdir().unwrap();
    let (a, _, _) = export_triple(dir.path(), "thm31C");
    let out = dir.path().join("a.dot");
    assert_eq!(cli(&["export-dot", &a, "-o", out.to_str().unwrap()]), 0);
    let dot = fs::read_to_string(&out).unwrap();
    assert_eq!(dot.matches("digraph").count(), 2);
    assert!(dot.contains("style=dashed"));
}

#[test]
fn usage_errors_exit_64_and_missing_files_exit_65() {
    assert_eq!(cli(&["no-such-command"]), 64);
    assert_eq!(cli(&["oracle", "--mode", "sap"]), 64);
    assert_eq!(cli(&["check", "/definitely/not/a/file.json"]), 65);
}

#[test]
fn written_structures_round_trip_through_the_parser() {
    let dir = tempfile::tempdir().unwrap();
    for e in &amalgam::counterexamples::CATALOG {
        let out = dir.path().join(e.name);
        assert_eq!(
            cli(&[
                "counterexample",
                "export",
                e.name,
                "-o",
                out.to_str().unwrap()
            ]),
            0
        );
        for f in ["a.json", "b.json", "c.json"] {
            let text = fs::read_to_string(out.join(f)).unwrap();
            let s = structure_from_json(&text).unwrap();
            assert_eq!(structure_to_json(&s), text);
        }
    }
}
