use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use spanres::graph::{
    build_gmnp, build_kmn_over_matching, build_kmn_over_tree, complete_bipartite, complete_graph,
};
use spanres::io::parse_graph;

fn spanres(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spanres"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Runs successfully and returns trimmed standard output.
fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = spanres(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out).trim().to_string()
}

fn code(args: &[&str], stdin: Option<&str>) -> i32 {
    spanres(args, stdin).status.code().unwrap()
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_shapes() {
    let k22 = parse_graph(&ok(&["gen", "kmn", "2", "2"], None)).unwrap();
    assert_eq!((k22.vertex_count(), k22.edge_count()), (4, 4));
    let c6 = parse_graph(&ok(&["gen", "gmnp", "3", "3", "3"], None)).unwrap();
    assert_eq!((c6.vertex_count(), c6.edge_count()), (6, 6));
    assert!(c6.degree_sequence().iter().all(|&d| d == 2));
    let g = parse_graph(&ok(&["gen", "kmn-over-matching", "6", "7", "3"], None)).unwrap();
    assert_eq!(g.vertex_count(), 10);
}

#[test]
fn gen_round_trips() {
    let cases: Vec<(Vec<&str>, _)> = vec![
        (vec!["kn", "5"], complete_graph(5).unwrap()),
        (vec!["kmn", "3", "4"], complete_bipartite(3, 4).unwrap()),
        (vec!["gmnp", "4", "3", "2"], build_gmnp(4, 3, 2).unwrap()),
        (
            vec!["kmn-over-matching", "4", "4", "2"],
            build_kmn_over_matching(4, 4, 2).unwrap(),
        ),
        (
            vec!["kmn-over-tree", "3", "4", "2", "2"],
            build_kmn_over_tree(3, 4, 2, 2).unwrap(),
        ),
    ];
    for (args, expected) in cases {
        let mut full = vec!["gen"];
        full.extend(args);
        let text = ok(&full, None);
        assert_eq!(parse_graph(&text).unwrap(), expected, "{full:?}");
        // deterministic output
        assert_eq!(ok(&full, None), text);
    }
}

#[test]
fn gen_rejects_bad_params() {
    let out = spanres(&["gen", "gmnp", "2", "2", "3"], None);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
    assert_eq!(code(&["gen", "kmn", "2"], None), 2);
}

#[test]
fn tau_command() {
    let dir = tempfile::tempdir().unwrap();
    let k33 = write_file(dir.path(), "k33.txt", &ok(&["gen", "kmn", "3", "3"], None));
    assert_eq!(ok(&["tau", &k33], None), "81");
    assert_eq!(ok(&["tau", &k33, "--brute"], None), "81");
    let k22 = ok(&["gen", "kmn", "2", "2"], None);
    assert_eq!(ok(&["tau", "-", "--containing", "0"], Some(&k22)), "3");
    // edges 0-2, 0-3, 1-2, 1-3 close a 4-cycle
    assert_eq!(
        ok(&["tau", "-", "--containing", "0,1,2,3"], Some(&k22)),
        "0"
    );
    assert_eq!(
        ok(&["tau", "-"], Some("graph 4\nedge 0 1 1\nedge 2 3 1\n")),
        "0"
    );
    assert_eq!(
        ok(
            &["tau", "-"],
            Some("graph 3\nedge 0 1 1\nedge 1 2 2\nedge 2 0 3\n")
        ),
        "11"
    );
    assert_eq!(
        ok(&["tau", "-"], Some("graph 2\nedge 0 1 1/2\nedge 0 1 1/3\n")),
        "5/6"
    );
}

#[test]
fn resist_command() {
    let k3 = ok(&["gen", "kn", "3"], None);
    assert_eq!(ok(&["resist", "-", "0", "1"], Some(&k3)), "2/3");
    assert_eq!(
        ok(&["resist", "-", "0", "1", "--method", "tau"], Some(&k3)),
        "2/3"
    );
    assert_eq!(
        ok(&["resist", "-", "0", "1", "--method", "reduce"], Some(&k3)),
        "2/3"
    );
    let path = "graph 3\nedge 0 1 1\nedge 1 2 1\n";
    let out = spanres(
        &["resist", "-", "0", "2", "--method", "reduce", "--trace"],
        Some(path),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2");
    assert!(String::from_utf8_lossy(&out.stderr).contains("series at 1"));
    let g331 = ok(&["gen", "gmnp", "3", "3", "1"], None);
    assert_eq!(ok(&["resist", "-", "0", "3"], Some(&g331)), "5/4");
}

#[test]
fn resist_errors() {
    let k4 = ok(&["gen", "kn", "4"], None);
    assert_eq!(
        code(&["resist", "-", "0", "1", "--method", "reduce"], Some(&k4)),
        4
    );
    assert_eq!(
        code(
            &["resist", "-", "0", "3"],
            Some("graph 4\nedge 0 1 1\nedge 2 3 1\n")
        ),
        3
    );
    assert_eq!(code(&["resist", "-", "0", "9"], Some(&k4)), 2);
    assert_eq!(code(&["resist", "-", "1", "1"], Some(&k4)), 3);
    assert_eq!(
        code(&["resist", "-", "0", "1", "--method", "oops"], Some(&k4)),
        2
    );
    assert_eq!(code(&["resist", "-", "0", "1", "--trace"], Some(&k4)), 2);
}

#[test]
fn kf_command() {
    assert_eq!(ok(&["kf", "-"], Some(&ok(&["gen", "kn", "3"], None))), "2");
    assert_eq!(
        ok(
            &["kf", "-"],
            Some(&ok(&["gen", "gmnp", "3", "3", "3"], None))
        ),
        "35/2"
    );
    assert_eq!(ok(&["kf", "-"], Some("graph 2\nedge 0 1 1\n")), "1");
}

#[test]
fn formula_command() {
    assert_eq!(ok(&["formula", "matching", "4", "5", "2"], None), "5040");
    assert_eq!(ok(&["formula", "gmnp", "3", "3", "1"], None), "36");
    assert_eq!(ok(&["formula", "cayley", "5"], None), "125");
    assert_eq!(ok(&["formula", "moon", "4", "2", "2"], None), "4");
    assert_eq!(ok(&["formula", "kmn", "3", "3"], None), "81");
    assert_eq!(ok(&["formula", "tree", "3", "3", "2", "1"], None), "21");
    assert_eq!(ok(&["formula", "kf-gmnp", "3", "3", "3"], None), "35/2");
    assert_eq!(ok(&["formula", "kf-shi-chen", "3", "1"], None), "45/4");
    assert_eq!(
        ok(&["formula", "ratio-matching", "6", "7", "3"], None),
        "39/140"
    );
    assert_eq!(
        ok(&["formula", "ratio-tree", "3", "3", "1", "1"], None),
        "7/15"
    );
    assert_eq!(
        ok(
            &["formula", "ratio-tree", "3", "3", "1", "1", "--grow", "s"],
            None
        ),
        "7/15"
    );
    let table = ok(&["formula", "r-table", "3", "3", "1"], None);
    assert!(table.lines().any(|l| l == "r11 = 7/12"), "{table}");
    assert!(table.lines().any(|l| l == "r5 = 5/4"), "{table}");
    assert_eq!(code(&["formula", "kf-shi-chen", "2", "1"], None), 3);
    assert_eq!(code(&["formula", "nonsense"], None), 2);
}

#[test]
fn parse_errors_exit_2() {
    let out = spanres(&["tau", "-"], Some("graph 2\nedge 0 0 1\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(code(&["tau", "/nonexistent/graph.txt"], None), 2);
    assert_eq!(code(&["kf", "-"], Some("edge 0 1 1\n")), 2);
}

#[test]
fn verify_command() {
    let out = spanres(
        &["verify", "--suite", "gmnp", "--max-m", "5", "--max-n", "5"],
        None,
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 failed"));
    assert!(ok(&["verify", "--suite", "laws", "--jobs", "2"], None).contains("laws:"));
    assert!(ok(
        &["verify", "--suite", "matching", "--max-m", "4", "--max-n", "4"],
        None
    )
    .contains("0 failed"));
    assert!(ok(
        &["verify", "--suite", "tree", "--max-m", "3", "--max-n", "3"],
        None
    )
    .contains("0 failed"));
    assert_eq!(code(&["verify", "--max-m", "1"], None), 2);
}

#[test]
fn verify_all_is_reproducible() {
    let args = [
        "verify",
        "--suite",
        "all",
        "--max-m",
        "3",
        "--max-n",
        "3",
        "--seed",
        "7",
        "--verbose",
    ];
    let a = ok(&args, None);
    assert_eq!(a, ok(&args, None));
    assert!(a.lines().any(|l| l.starts_with("ok laws/foster")));
}
