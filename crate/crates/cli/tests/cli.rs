//! End-to-end checks of the `cpath` binary: exit codes, round trips, and
//! deterministic output.

use std::path::Path;
use std::process::{Command, Output};

fn cpath(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpath"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn color_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&cpath(&["gen", "--kind", "cycle", "-n", "9", "-o", "c9.col"], d)), 0);
    let colored = cpath(&["color", "-i", "c9.col", "-o", "c9.sol"], d);
    assert_eq!(code(&colored), 0, "{}", stderr(&colored));
    let sol = std::fs::read_to_string(d.join("c9.sol")).unwrap();
    assert!(sol.lines().any(|l| l.starts_with("v 1 ")), "coloring file format");
    let verified = cpath(&["verify", "-i", "c9.col", "-c", "c9.sol"], d);
    assert_eq!(code(&verified), 0, "{}", stderr(&verified));
    assert!(stdout(&verified).contains("all vertices certified"));
}

#[test]
fn seven_cycle_exits_with_the_exception_code() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cpath(&["gen", "--kind", "cycle", "-n", "7", "-o", "c7.col"], d);
    let out = cpath(&["color", "-i", "c7.col"], d);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("7-cycle"));
}

#[test]
fn unsupported_inputs_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cpath(&["gen", "--kind", "complete", "-n", "5", "-o", "k5.col"], d);
    assert_eq!(code(&cpath(&["color", "-i", "k5.col"], d)), 3);
}

#[test]
fn disconnected_graphs_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("disc.txt"), "0 1\n2 3\n").unwrap();
    let out = cpath(&["color", "-i", "disc.txt", "-f", "edges"], d);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("disconnected"));
}

#[test]
fn broken_files_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&cpath(&["color", "-i", "missing.col"], d)), 1);
    std::fs::write(d.join("bad.col"), "p edge 2 1\ne 1 5\n").unwrap();
    let out = cpath(&["color", "-i", "bad.col"], d);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("bad.col"));
}

#[test]
fn verify_rejects_bad_colorings() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cpath(&["gen", "--kind", "cycle", "-n", "7", "-o", "c7.col"], d);
    // A proper 3-coloring of the 7-cycle: some vertex must be uncertified.
    std::fs::write(
        d.join("proper.sol"),
        "v 1 1\nv 2 2\nv 3 3\nv 4 1\nv 5 2\nv 6 3\nv 7 2\n",
    )
    .unwrap();
    let out = cpath(&["verify", "-i", "c7.col", "-c", "proper.sol"], d);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("UNCERTIFIED"));

    // An improper coloring is called out as such.
    cpath(&["gen", "--kind", "complete", "-n", "3", "-o", "k3.col"], d);
    std::fs::write(d.join("improper.sol"), "v 1 1\nv 2 1\nv 3 2\n").unwrap();
    let out = cpath(&["verify", "-i", "k3.col", "-c", "improper.sol"], d);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not proper"));
}

#[test]
fn chi_prints_the_number() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cpath(&["gen", "--kind", "bipartite", "-a", "3", "-b", "4", "-o", "k34.col"], d);
    let out = cpath(&["chi", "-i", "k34.col"], d);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "2");
}

#[test]
fn sweep_reports_clean_counts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = cpath(&["sweep", "--n-max", "5", "--chi", "3", "--jobs", "2"], d);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("zero discrepancies"));
    assert!(text.contains("examined=1099"));
    assert!(text.contains("connected=772"));
}

#[test]
fn fixed_seeds_give_byte_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["gen", "--kind", "random", "-n", "12", "--chi", "3", "--seed", "9"];
    let first = cpath(&args, d);
    let second = cpath(&args, d);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    std::fs::write(d.join("r.col"), stdout(&first)).unwrap();

    let run = |_: usize| cpath(&["trace", "-i", "r.col", "--seed", "4"], d);
    let (t1, t2) = (run(1), run(2));
    assert_eq!(code(&t1), 0);
    assert_eq!(t1.stdout, t2.stdout);
    assert!(stdout(&t1).starts_with("step=1 move=seed arg=seed=4"));
}

#[test]
fn trace_directory_holds_records_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cpath(&["gen", "--kind", "cycle", "-n", "9", "-o", "c9.col"], d);
    let out = cpath(&["color", "-i", "c9.col", "-o", "c9.sol", "--trace", "tr"], d);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let trace = std::fs::read_to_string(d.join("tr/trace.txt")).unwrap();
    assert!(trace.starts_with("step=1 move=seed"));
    let dots: Vec<_> = std::fs::read_dir(d.join("tr"))
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "dot"))
        .collect();
    assert!(!dots.is_empty(), "at least one DOT snapshot");
    let dot = std::fs::read_to_string(dots[0].path()).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("label=\"v1/c"));
}
