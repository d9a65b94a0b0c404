use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn flowtab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowtab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Field `key` of a `key value` report.
fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
}

/// Temporary directory holding every built-in fixture as `.matrix` and `.dimacs`.
fn exported() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = flowtab(&["fixtures", "--export", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SUBOPTIMAL: &str = "5
0 1 4 1 0
1 0 4 5 0
5 2 0 2 1
1 3 4 0 3
inf inf 1 4 0
s 4
";

#[test]
fn solve_example1_matrix() {
    let dir = exported();
    let out = flowtab(&["solve", arg(&dir.path().join("example1.matrix"))]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert_eq!(field(&s, "status"), Some("completed"));
    assert_eq!(field(&s, "cost"), Some("103"));
    assert_eq!(field(&s, "dispatches"), Some("6"));
}

#[test]
fn solve_example2_dimacs() {
    let dir = exported();
    let out = flowtab(&["solve", arg(&dir.path().join("example2.dimacs"))]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert_eq!(field(&s, "cost"), Some("14"));
    assert_eq!(field(&s, "shipped"), Some("4"));
}

#[test]
fn solve_writes_trace() {
    let dir = exported();
    let trace = dir.path().join("trace.csv");
    let out = flowtab(&[
        "solve",
        arg(&dir.path().join("example1.matrix")),
        "--trace",
        arg(&trace),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(trace).unwrap();
    let rows: Vec<_> = csv.lines().collect();
    assert_eq!(
        rows[0],
        "step,sender,receiver,quantity,unit_cost,leg_cost,cumulative_cost"
    );
    assert_eq!(rows.len(), 7);
    assert!(rows[6].ends_with(",103"));
}

#[test]
fn malformed_input_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.matrix", "3\n0 1 x\n");
    let out = flowtab(&["solve", arg(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    let bad = write(dir.path(), "bad.dimacs", "p min 2 1\na 1 2 0 3\n");
    assert_eq!(flowtab(&["exact", arg(&bad)]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_4() {
    assert_eq!(
        flowtab(&["solve", "/nonexistent/file.matrix"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(flowtab(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(flowtab(&["gen", "--nodes", "1"]).status.code(), Some(4));
    assert_eq!(flowtab(&["--help"]).status.code(), Some(0));
}

#[test]
fn exact_solves_fixtures() {
    let dir = exported();
    for (name, cost) in [("example1", "103"), ("example3", "120")] {
        let out = flowtab(&["exact", arg(&dir.path().join(format!("{name}.matrix")))]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(field(&stdout(&out), "cost"), Some(cost), "{name}");
    }
}

#[test]
fn excess_supply_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "neck.dimacs",
        "p min 3 2\nn 1 5\nn 3 -5\na 1 2 0 9 1\na 2 3 0 2 1\n",
    );
    let out = flowtab(&["exact", arg(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(field(&stdout(&out), "shipped"), Some("2"));
    assert_eq!(flowtab(&["solve", arg(&p)]).status.code(), Some(2));
    let out = flowtab(&["exact", arg(&p), "--supply", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_reports_gaps() {
    let dir = exported();
    let s = stdout(&flowtab(&[
        "verify",
        arg(&dir.path().join("example2.dimacs")),
    ]));
    assert_eq!(field(&s, "absolute_gap"), Some("0"));
    assert_eq!(field(&s, "relative_gap"), Some("0"));

    let p = write(dir.path(), "subopt.matrix", SUBOPTIMAL);
    let out = flowtab(&["verify", arg(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert_eq!(field(&s, "heuristic_cost"), Some("37"));
    assert_eq!(field(&s, "exact_cost"), Some("32"));
    assert_eq!(field(&s, "absolute_gap"), Some("5"));
    assert_eq!(field(&s, "relative_gap"), Some("5/32"));
    assert!(out.stderr.is_empty(), "both solutions verify");

    let s = stdout(&flowtab(&[
        "verify",
        arg(&dir.path().join("example5.matrix")),
    ]));
    assert_eq!(field(&s, "heuristic_status"), Some("stranded"));
    assert_eq!(field(&s, "absolute_gap"), None);
}

#[test]
fn gen_output_reparses_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = flowtab(&["gen", "--nodes", "50", "--seed", "1"]);
    let b = flowtab(&["gen", "--nodes", "50", "--seed", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let p = write(dir.path(), "g.matrix", &stdout(&a));
    let out = flowtab(&["exact", arg(&p)]);
    assert_eq!(out.status.code(), Some(0));

    let d = dir.path().join("g.dimacs");
    let out = flowtab(&[
        "gen",
        "--nodes",
        "30",
        "--seed",
        "1",
        "--format",
        "dimacs",
        "-o",
        arg(&d),
    ]);
    assert_eq!(field(&stdout(&out), "seed"), Some("1"));
    assert!(fs::read_to_string(&d).unwrap().starts_with("p min 30 "));
    assert_eq!(flowtab(&["exact", arg(&d)]).status.code(), Some(0));
}

#[test]
fn gen_two_nodes_single_arc() {
    let s = stdout(&flowtab(&[
        "gen",
        "--nodes",
        "2",
        "--density",
        "1",
        "--cap-range",
        "4:4",
        "--cost-range",
        "2:2",
        "--format",
        "dimacs",
    ]));
    assert_eq!(s, "p min 2 1\nn 1 4\nn 2 -4\na 1 2 0 4 2\n");
}

#[test]
fn bench_rows_are_complete_and_deterministic() {
    let args = ["bench", "--sizes", "50,100", "--seeds", "3"];
    let a = flowtab(&args);
    assert_eq!(a.status.code(), Some(0));
    let s = stdout(&a);
    let mut lines = s.lines();
    let header: Vec<_> = lines.next().unwrap().split(',').collect();
    let gap = header.iter().position(|h| *h == "absolute_gap").unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert_eq!(r.len(), header.len());
        if !r[gap].is_empty() {
            assert!(r[gap].parse::<i64>().unwrap() >= 0);
        }
    }
    assert_eq!(flowtab(&args).stdout, a.stdout);
}

#[test]
fn fixtures_report_lists_every_example() {
    let s = stdout(&flowtab(&["fixtures"]));
    assert_eq!(s.lines().count(), 10);
    assert!(s
        .lines()
        .any(|l| l.starts_with("example1,") && l.contains(",completed,")));
}
