use std::fs;

use cellres::cli::{self, EXIT_NOT_RESOLUTION, EXIT_OK, EXIT_USAGE};

#[test]
fn input_file_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("k22.json");
    fs::write(&input, r#"{"m":2,"n":2,"edge_weights":[[2,3],[3,2]]}"#).unwrap();
    let report = dir.path().join("report.txt");
    let out = cli::run([
        "cellres",
        "--out",
        report.to_str().unwrap(),
        "check",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_NOT_RESOLUTION);
    assert!(out.stdout.is_empty());
    let written = fs::read_to_string(&report).unwrap();
    assert!(written.starts_with("theorem: NO, oracle: NO"), "{written}");
}

#[test]
fn m2_export_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.json");
    fs::write(&input, r#"{"m":1,"n":2,"vertex_weights":{"x":[1],"y":[2,3]}}"#).unwrap();
    let target = dir.path().join("g.m2");
    let out = cli::run([
        "cellres",
        "--format",
        "m2",
        "--out",
        target.to_str().unwrap(),
        "export",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(fs::read_to_string(&target).unwrap().contains("monomialIdeal"));
}

#[test]
fn missing_input_file_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli::run(["cellres", "check", "--input", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
}
