//! End-to-end tests of the `equicolor` binary: subcommand plumbing, the
//! exit-code contract (0 success, 2 proof-shaped negative, 1 error), and
//! piping generators into solvers.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use equicolor::io::parse_graph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equicolor"))
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn equicolor");
    child
        .stdin
        .as_mut()
        .expect("stdin handle")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("wait for equicolor")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path_text(n: usize) -> String {
    let mut text = format!("n {n}\n");
    for v in 0..n - 1 {
        text.push_str(&format!("e {v} {}\n", v + 1));
    }
    text
}

#[test]
fn generate_emits_parseable_graph_with_certificate_header() {
    let out = bin()
        .args(["generate", "--family", "stalactite", "--params", "1"])
        .output()
        .expect("run generate");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("# claimed order 8, max degree 5"));
    assert!(text.contains("# claimed class profile 4 2 2"));
    let g = parse_graph(&text).expect("generated text parses");
    assert_eq!(g.n(), 8);
    assert_eq!((0..8).map(|v| g.degree(v)).max(), Some(5));
}

#[test]
fn generate_piped_into_oracle_reports_infeasible() {
    let graph = bin()
        .args(["generate", "--family", "stalactite", "--params", "1"])
        .output()
        .expect("run generate");
    let out = run_with_stdin(&["oracle", "--s", "3"], &stdout_of(&graph));
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_of(&out).contains("outcome: Infeasible"));
}

#[test]
fn color_reports_path_class_profile() {
    let out = run_with_stdin(&["color", "--s", "6"], &path_text(13));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("outcome: Colored"));
    assert!(text.contains("classes: 3 2 2 2 2 2"));
}

#[test]
fn color_out_file_round_trips_through_verify() {
    let dir = tempfile::tempdir().expect("tempdir");
    let graph_path = dir.path().join("p13.txt");
    let col_path = dir.path().join("col.txt");
    std::fs::write(&graph_path, path_text(13)).expect("write graph");
    let out = bin()
        .args(["color", "--s", "6", "--out"])
        .arg(&col_path)
        .arg(&graph_path)
        .output()
        .expect("run color");
    assert_eq!(out.status.code(), Some(0));
    let out = bin()
        .args(["verify", "--coloring"])
        .arg(&col_path)
        .arg(&graph_path)
        .output()
        .expect("run verify");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("outcome: Colored"));
}

#[test]
fn tampered_coloring_fails_verification() {
    let dir = tempfile::tempdir().expect("tempdir");
    let graph_path = dir.path().join("p13.txt");
    let col_path = dir.path().join("col.txt");
    std::fs::write(&graph_path, path_text(13)).expect("write graph");
    let status = bin()
        .args(["color", "--s", "6", "--out"])
        .arg(&col_path)
        .arg(&graph_path)
        .status()
        .expect("run color");
    assert!(status.success());
    // give vertex 0 the colour of its neighbour: in range, but not proper
    let text = std::fs::read_to_string(&col_path).expect("read colouring");
    let neighbour_colour = text
        .lines()
        .find_map(|l| l.strip_prefix("c 1 "))
        .expect("entry for vertex 1")
        .to_owned();
    let tampered: String = text
        .lines()
        .map(|l| {
            if l.starts_with("c 0 ") {
                format!("c 0 {neighbour_colour}\n")
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    std::fs::write(&col_path, tampered).expect("write tampered");
    let out = bin()
        .args(["verify", "--coloring"])
        .arg(&col_path)
        .arg(&graph_path)
        .output()
        .expect("run verify");
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("outcome: Error"));
}

#[test]
fn hypothesis_violation_exits_two_and_success_zero() {
    // star: the centre meets every vertex, so its best independent set is
    // itself and the floor n/s = 3 cannot be reached
    let mut star = String::from("n 10\n");
    for leaf in 1..10 {
        star.push_str(&format!("e 0 {leaf}\n"));
    }
    let out = run_with_stdin(&["hypothesis", "--s", "3"], &star);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_of(&out).contains("outcome: HypothesisViolated"));

    let out = run_with_stdin(&["hypothesis", "--s", "3"], &path_text(12));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("hypothesis: holds"));
}

#[test]
fn enum_counts_triangulated_hexagons() {
    let out = bin()
        .args(["enum", "--n", "6"])
        .output()
        .expect("run enum");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.trim_end().ends_with("# total 14"));
    // every emitted block must itself parse
    for block in text.split("\n\n") {
        let block = block.trim();
        if block.starts_with('n') {
            parse_graph(block).expect("enumerated block parses");
        }
    }
    let out = bin()
        .args(["enum", "--n", "6", "--dedup"])
        .output()
        .expect("run enum dedup");
    assert!(stdout_of(&out).trim_end().ends_with("# total 3"));
}

#[test]
fn partition_reports_two_forest_parts() {
    // triangulated hexagon by ear decomposition
    let hexagon = "n 6\nouter 0 1 2 3 4 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 0 5\ne 0 2\ne 0 3\ne 3 5\n";
    let out = run_with_stdin(&["partition"], hexagon);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("outcome: Partitioned"));
    assert!(text.contains("parts: "));
}

#[test]
fn unparseable_input_exits_one() {
    let out = run_with_stdin(&["color", "--s", "4"], "this is not a graph\n");
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:"));
}

#[test]
fn planar_route_colors_wide_path() {
    let out = run_with_stdin(&["color", "--planar", "--s", "40"], &path_text(40));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("outcome: Colored"));
}

#[test]
fn planar_low_s_route_uses_forest_split() {
    // 8x8 grid: degree at most 4, large enough for the four-forest route
    let mut grid = String::from("n 64\n");
    for r in 0..8usize {
        for c in 0..8usize {
            let v = 8 * r + c;
            if c + 1 < 8 {
                grid.push_str(&format!("e {v} {}\n", v + 1));
            }
            if r + 1 < 8 {
                grid.push_str(&format!("e {v} {}\n", v + 8));
            }
        }
    }
    let out = run_with_stdin(&["color", "--planar", "--s", "12"], &grid);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("outcome: Colored"));
    // 64 vertices in 12 classes: four of size 6, eight of size 5
    assert!(stdout_of(&out).contains("classes: 6 6 6 6 5 5 5 5 5 5 5 5"));
}

#[test]
fn seed_changes_random_families_only() {
    let fixed_a = bin()
        .args(["generate", "--family", "extender", "--params", "2", "--seed", "1"])
        .output()
        .expect("run generate");
    let fixed_b = bin()
        .args(["generate", "--family", "extender", "--params", "2", "--seed", "2"])
        .output()
        .expect("run generate");
    assert_eq!(stdout_of(&fixed_a), stdout_of(&fixed_b));

    let rand_a = bin()
        .args(["generate", "--family", "random-tree", "--params", "30", "--seed", "1"])
        .output()
        .expect("run generate");
    let rand_a2 = bin()
        .args(["generate", "--family", "random-tree", "--params", "30", "--seed", "1"])
        .output()
        .expect("run generate");
    let rand_b = bin()
        .args(["generate", "--family", "random-tree", "--params", "30", "--seed", "2"])
        .output()
        .expect("run generate");
    assert_eq!(stdout_of(&rand_a), stdout_of(&rand_a2));
    assert_ne!(stdout_of(&rand_a), stdout_of(&rand_b));
}

#[test]
fn bad_family_parameters_exit_one() {
    let out = bin()
        .args(["generate", "--family", "degenerate", "--params", "3", "2"])
        .output()
        .expect("run generate");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s ≥ d ≥ 1"));
}
