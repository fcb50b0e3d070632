//! End-to-end tests of the `gapnum` binary.

use std::process::{Command, Output};

fn gapnum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapnum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn compute_known_rectangles() {
    let out = gapnum(&["compute", "--width", "3", "--length", "9"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("M(3, 9) = 3"));

    let out = gapnum(&["compute", "--width", "4", "--length", "8"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("M(4, 8) = 0"));

    let out = gapnum(&["compute", "--width", "1", "--length", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("M(1, 5) = 5"));
}

#[test]
fn compute_ascii_output_parses_back() {
    let out = gapnum(&["compute", "--width", "5", "--length", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let grid_start = text.find("5 7 ").expect("render header present");
    let tiling = gapnum_cli::render::parse_ascii(&text[grid_start..]).expect("parses");
    assert_eq!(tiling.validate(), Ok(tiling.monomino_count));
}

#[test]
fn compute_json_is_machine_readable() {
    let out = gapnum(&["compute", "--width", "2", "--length", "3", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["gap_number"], 2);
    assert_eq!(doc["witness"]["monomino_count"], 2);
}

#[test]
fn compute_writes_svg_file() {
    let dir = std::env::temp_dir().join("gapnum-cli-test-svg");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.svg");
    let out = gapnum(&[
        "compute",
        "--width",
        "4",
        "--length",
        "4",
        "--format",
        "svg",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("viewBox=\"0 0 4 4\""));
    std::fs::remove_file(&path).ok();
}

#[test]
fn digraph_stats_and_export() {
    let out = gapnum(&["digraph", "--width", "5", "--stats"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("182"));

    let out = gapnum(&["digraph", "--width", "9", "--stats", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["node_count"], 15496);

    let dir = std::env::temp_dir().join("gapnum-cli-test-export");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f3.json");
    let out = gapnum(&["digraph", "--width", "3", "--export", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).expect("valid schema");
    assert_eq!(doc["width"], 3);
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 16);
    assert_eq!(doc["nodes"][0]["fringe"], "0");
    assert!(doc["edges"][0]["placement"]["kind"].is_string());
    // Round-trips through the importer.
    let imported = gapnum::FringeDigraph::import(&text).expect("imports");
    assert_eq!(imported.node_count(), 16);
    assert_eq!(imported.export_to_string(), text);
    std::fs::remove_file(&path).ok();
}

#[test]
fn bound_reports_density_and_unbounded() {
    let out = gapnum(&["bound", "--width", "9"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("m = 38"));
    assert!(text.contains("17 columns"));

    let out = gapnum(&["bound", "--width", "4", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["kind"], "unbounded");
}

#[test]
fn run_and_cylinder_subcommands() {
    let out = gapnum(&["run", "--width", "7", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["max_gapless_columns"], 8);

    let out = gapnum(&[
        "cylinder",
        "--width",
        "5",
        "--period",
        "5",
        "--max-monominoes",
        "1",
        "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["found"], true);
    assert_eq!(doc["witness"]["monominoes"], 1);

    let out = gapnum(&[
        "cylinder",
        "--width",
        "9",
        "--period",
        "17",
        "--max-monominoes",
        "0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("exhaustive"));
}

#[test]
fn oracle_subcommand() {
    let out = gapnum(&["oracle", "--width", "2", "--length", "3", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["gap_number"], 2);

    // Over the area cap: distinct nonzero exit.
    let out = gapnum(&["oracle", "--width", "9", "--length", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn errors_exit_nonzero() {
    let out = gapnum(&["compute", "--width", "0", "--length", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("error"));

    let out = gapnum(&["compute", "--width", "three", "--length", "5"]);
    assert!(!out.status.success());
}

#[test]
fn verify_paper_fast_is_deterministic() {
    let a = gapnum(&["verify-paper", "--level", "fast"]);
    assert!(a.status.success(), "fast checks pass");
    let b = gapnum(&["verify-paper", "--level", "fast"]);
    assert_eq!(a.stdout, b.stdout, "reports are byte-identical");
    let text = stdout(&a);
    assert!(text.contains("[ok  ] digraph-nodes-w3"));
    assert!(text.contains("0 failed"));
}
