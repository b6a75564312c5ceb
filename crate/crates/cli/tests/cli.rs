//! End-to-end runs of the `quasikernel` binary: exit codes, file handling
//! and report contents.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasikernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasikernel"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Modulator vertex 1 pinches the edges 2-3 and 4-5.
const PENDANT_PAIR: &str = "p vc-struct 5 6 2 0 quasi-forest\n\
    e 1 2\ne 1 3\ne 1 4\ne 1 5\ne 2 3\ne 4 5\nx 1\n";

const K4_QUASI_FOREST: &str = "p vc-struct 4 6 1 2 quasi-forest\n\
    e 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\nx\n";

const C5: &str = "p vc-struct 5 5 2 1 quasi-forest\n\
    e 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\nx\n";

#[test]
fn kernelize_reports_the_pendant_pair_deletion() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("in.gr"), PENDANT_PAIR).unwrap();
    let out = run_in(
        dir.path(),
        &["kernelize", "--graph", "in.gr", "--out", "red.gr", "--report", "rep.json"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("rep.json")).unwrap()).unwrap();
    assert_eq!(report["deletions"].as_array().unwrap().len(), 1);
    assert_eq!(report["k_before"], 2);
    assert_eq!(report["k_after"], 1);
    let reduced = fs::read_to_string(dir.path().join("red.gr")).unwrap();
    assert!(reduced.starts_with("p vc-struct 3 3 1 0 quasi-forest\n"));
}

#[test]
fn verify_accepts_the_pipeline_on_generated_instances() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, seed) in [("quasi-forest", "3"), ("quasi-bipartite", "4"), ("quasi-integral", "5")] {
        let out = run_in(
            dir.path(),
            &["generate", "--kind", kind, "--size", "5", "--modulator", "3", "--seed", seed, "--out", "g.gr"],
        );
        assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
        let out = run_in(dir.path(), &["verify", "--graph", "g.gr"]);
        assert_eq!(
            exit_code(&out),
            0,
            "{kind} seed {seed}: {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(String::from_utf8_lossy(&out.stdout).contains("equivalent"));
    }
}

#[test]
fn blocking_reports_the_tight_clique() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k4.gr"), K4_QUASI_FOREST).unwrap();
    let out = run_in(dir.path(), &["blocking", "--graph", "k4.gr"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["bound"], 4);
    assert_eq!(doc["all_respected"], true);
    let comp = &doc["components"][0];
    assert_eq!(comp["member"], true);
    assert_eq!(comp["blocking"]["max_minimal_size"], 4);
    assert_eq!(comp["blocking"]["bound_respected"], true);
    assert_eq!(comp["blocking"]["minimal_sets"].as_array().unwrap().len(), 1);
}

#[test]
fn lp_reports_the_half_integral_cycle() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c5.gr"), C5).unwrap();
    let out = run_in(dir.path(), &["lp", "--graph", "c5.gr"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["lp_vc"], "5/2");
    assert_eq!(doc["lp_is"], "5/2");
    assert_eq!(doc["v_half"].as_array().unwrap().len(), 5);
    assert_eq!(doc["v0"].as_array().unwrap().len(), 0);
    assert_eq!(doc["v1"].as_array().unwrap().len(), 0);
}

#[test]
fn solve_reports_exact_numbers() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c5.gr"), C5).unwrap();
    let out = run_in(dir.path(), &["solve", "--graph", "c5.gr"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["alpha"], 2);
    assert_eq!(doc["vc"], 3);
    assert_eq!(doc["k"], 2);
    assert_eq!(doc["yes"], true);
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    // Missing file.
    assert_eq!(exit_code(&run_in(dir.path(), &["solve", "--graph", "absent.gr"])), 2);
    // Duplicate edge.
    fs::write(dir.path().join("dup.gr"), "p vc-struct 2 2 1 0 quasi-forest\ne 1 2\ne 2 1\nx\n").unwrap();
    let out = run_in(dir.path(), &["solve", "--graph", "dup.gr"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    // Off-class component.
    fs::write(
        dir.path().join("k3.gr"),
        "p vc-struct 3 3 1 0 quasi-forest\ne 1 2\ne 2 3\ne 1 3\nx\n",
    )
    .unwrap();
    assert_eq!(exit_code(&run_in(dir.path(), &["solve", "--graph", "k3.gr"])), 2);
    // Unknown flag and missing subcommand (clap).
    assert_eq!(exit_code(&run(&["kernelize", "--bogus"])), 2);
    assert_eq!(exit_code(&run(&[])), 2);
    // Inconsistent generator spec.
    assert_eq!(
        exit_code(&run(&["generate", "--kind", "quasi-forest", "--size", "1", "--d", "2"])),
        2
    );
}

#[test]
fn kernelize_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run_in(
        dir.path(),
        &["generate", "--kind", "quasi-bipartite", "--seed", "11", "--out", "g.gr"],
    );
    assert_eq!(exit_code(&gen), 0);
    for pass in ["a", "b"] {
        let out = run_in(
            dir.path(),
            &[
                "kernelize",
                "--graph",
                "g.gr",
                "--out",
                &format!("red-{pass}.gr"),
                "--report",
                &format!("rep-{pass}.json"),
            ],
        );
        assert_eq!(exit_code(&out), 0);
    }
    let red_a = fs::read(dir.path().join("red-a.gr")).unwrap();
    let red_b = fs::read(dir.path().join("red-b.gr")).unwrap();
    assert_eq!(red_a, red_b);
    let rep_a = fs::read(dir.path().join("rep-a.json")).unwrap();
    let rep_b = fs::read(dir.path().join("rep-b.json")).unwrap();
    assert_eq!(rep_a, rep_b);
}

#[test]
fn generate_is_byte_deterministic_and_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["generate", "--kind", "quasi-forest", "--components", "3", "--seed", "42"];
    let first = run_in(dir.path(), &args);
    let second = run_in(dir.path(), &args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    // The emitted text is a valid instance file.
    fs::write(dir.path().join("g.gr"), &first.stdout).unwrap();
    let out = run_in(dir.path(), &["solve", "--graph", "g.gr"]);
    assert_eq!(exit_code(&out), 0);
}
