use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const CHAIN: &str = "node 1 a\nnode 2\nnode 3 a\nnode 4 b\nedge 1 2 5 1\nedge 2 3 1 1\nedge 3 4 2 1\n";
const TWO_TRIANGLES: &str = "node x0 a\nnode x1 a\nnode x2 a\nnode y0 a\nnode y1 a\nnode y2 a\n\
edge x0 x1 1\nedge x1 x2 1\nedge x0 x2 1\nedge y0 y1 1\nedge y1 y2 1\nedge y0 y2 1\n";

fn teamform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teamform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no `{key}` in report:\n{report}"))
}

#[test]
fn solve_reports_the_density_team() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", CHAIN);
    let t = write(&dir, "t.txt", "require a 2\n");
    let trace = dir.path().join("trace.txt");
    let o = teamform(&["solve", "--graph", s(&g), "--task", s(&t), "--algo", "sdensest", "--trace", s(&trace)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = stdout(&o);
    assert_eq!(field(&report, "members"), "1 2 3");
    assert_eq!(field(&report, "density"), "2");
    assert_eq!(field(&report, "components"), "1");
    assert_eq!(field(&report, "skill.a"), "2/2");
    assert!(report.lines().last().unwrap().starts_with("wall_time_ms "));
    let trace = std::fs::read_to_string(trace).unwrap();
    assert!(trace.lines().any(|l| l.starts_with("round 1 ")));
    assert!(trace.lines().any(|l| l.starts_with("chosen ")));
}

#[test]
fn reports_repeat_apart_from_wall_time() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", CHAIN);
    let t = write(&dir, "t.txt", "require a 2\nrequire b 1\n");
    for algo in ["mdensest", "mindiameter", "enhanced", "partialtrim", "completetrim"] {
        let run = || {
            let out = stdout(&teamform(&["solve", "--graph", s(&g), "--task", s(&t), "--algo", algo]));
            out.lines().filter(|l| !l.starts_with("wall_time_ms")).collect::<Vec<_>>().join("\n")
        };
        let first = run();
        assert_eq!(first, run(), "{algo}");
        assert_eq!(field(&first, "algo"), algo);
    }
}

#[test]
fn exit_codes_follow_the_failure_kind() {
    let dir = TempDir::new().unwrap();
    let chain = write(&dir, "g.txt", CHAIN);
    let triangles = write(&dir, "tri.txt", TWO_TRIANGLES);
    let five = write(&dir, "t5.txt", "require a 5\n");

    let infeasible = teamform(&["solve", "--graph", s(&chain), "--task", s(&five), "--algo", "mindiameter"]);
    assert_eq!(infeasible.status.code(), Some(2));

    let heuristic = teamform(&["solve", "--graph", s(&triangles), "--task", s(&five), "--algo", "enhanced"]);
    assert_eq!(heuristic.status.code(), Some(3), "{}", String::from_utf8_lossy(&heuristic.stderr));

    let missing = teamform(&["solve", "--graph", "/nonexistent", "--task", s(&five), "--algo", "sdensest"]);
    assert_eq!(missing.status.code(), Some(1));

    let bad = write(&dir, "bad.txt", "node 1\nedge 1 2 1\n");
    let parse = teamform(&["solve", "--graph", s(&bad), "--task", s(&five), "--algo", "sdensest"]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 2"));

    assert_eq!(teamform(&["solve", "--algo", "nope"]).status.code(), Some(1));
    assert_eq!(teamform(&["--help"]).status.code(), Some(0));
}

#[test]
fn certify_modes() {
    let reduction = teamform(&["certify", "--mode", "reduction"]);
    assert_eq!(reduction.status.code(), Some(0));
    let csv = stdout(&reduction);
    assert_eq!(csv.lines().next(), Some("name,vars,clauses,sat,team_exists,gadget_ok,pass"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));

    let ratio = teamform(&["certify", "--mode", "ratio", "--count", "15", "--seed", "3"]);
    assert_eq!(ratio.status.code(), Some(0));
    assert_eq!(stdout(&ratio).lines().count(), 1 + 3 * 15);
    let again = teamform(&["certify", "--mode", "ratio", "--count", "15", "--seed", "3"]);
    assert_eq!(stdout(&ratio), stdout(&again));

    let refused = teamform(&["certify", "--mode", "ratio", "--max-nodes", "30"]);
    assert_eq!(refused.status.code(), Some(1));
}

#[test]
fn metrics_on_the_fixture_corpus() {
    let dir = TempDir::new().unwrap();
    let team = write(&dir, "team.txt", "1 2 3\n");
    let corpus = write(&dir, "corpus.txt", "pub P1 AI 1 2\npub P2 DB 1 3 4\n");
    let o = teamform(&["metrics", "--team", s(&team), "--corpus", s(&corpus)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "team_pubs"), "1");
    assert_eq!(field(&out, "partial_team_pubs"), "2");
    assert_eq!(field(&out, "team_pub_ratio"), "7/12");

    let ab = write(&dir, "ab.txt", "A B\n");
    let ranked = write(&dir, "c2.txt", "pub Q1 AI A B\n");
    let ranks = write(&dir, "ranks.txt", "rank A 2\nrank B 4\n");
    let o = teamform(&["metrics", "--team", s(&ab), "--corpus", s(&ranked), "--ranks", s(&ranks)]);
    assert_eq!(field(&stdout(&o), "team_rank"), "375");

    let empty = write(&dir, "empty.txt", "");
    let o = teamform(&["metrics", "--team", s(&team), "--corpus", s(&empty)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ingest_then_bench() {
    let dir = TempDir::new().unwrap();
    let corpus = write(
        &dir,
        "corpus.txt",
        "pub p1 AI u v\npub p2 AI u v\npub p3 DB u v w\npub p4 DB v w\npub p5 T u w\npub p6 T w v\n",
    );
    let graph = dir.path().join("g.txt");
    let o = teamform(&["ingest", "--corpus", s(&corpus), "--min-papers", "3", "--min-copapers", "2", "--out", s(&graph)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "nodes 3\nedges 3\n");

    let o = teamform(&[
        "bench", "--graph", s(&graph), "--skills", "AI,DB", "--k-range", "1,2",
        "--algos", "sdensest,completetrim,mindiameter",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k,skill,algo,status,density,size,components,density_per_node,time_ms");
    assert_eq!(lines.len(), 1 + 2 * 2 * 3);
    assert!(lines[1].starts_with("1,AI,sdensest,ok,"));
}

#[test]
fn reduce_writes_a_solvable_instance() {
    let dir = TempDir::new().unwrap();
    let sat = write(&dir, "f.cnf", "p 3 2\n1 2 3 0\n-1 -2 3 0\n");
    let (g, t) = (dir.path().join("g.txt"), dir.path().join("t.txt"));
    let o = teamform(&["reduce", "--sat", s(&sat), "--graph-out", s(&g), "--task-out", s(&t)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(field(&out, "nodes"), "10");
    assert_eq!(field(&out, "k"), "7");
    assert_eq!(field(&out, "threshold"), "2");
    let o = teamform(&["solve", "--graph", s(&g), "--task", s(&t), "--algo", "mindiameter"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(field(&stdout(&o), "size").parse::<usize>().unwrap() >= 7);
}
