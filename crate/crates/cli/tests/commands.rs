//! End-to-end runs of the `pidwidth` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use pidwidth_core::oracle::binomial;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pidwidth"));
    cmd.env("NO_COLOR", "1");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn path_gr(n: usize) -> String {
    let mut s = format!("p tw {n} {}\n", n - 1);
    for v in 1..n {
        s.push_str(&format!("{v} {}\n", v + 1));
    }
    s
}

#[test]
fn solve_reports_values() {
    let o = run(&["solve", "--param", "tw", "--named", "Grotzsch"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "tw = 5\n"));
    let o = run_stdin(&["solve", "--param", "pw", "--input", "-"], &path_gr(5));
    assert_eq!(stdout(&o), "pw = 1\n");
    let o = run_stdin(&["solve", "--param", "td", "--input", "-"], &path_gr(7));
    assert_eq!(stdout(&o), "td = 3\n");
}

#[test]
fn solve_then_verify_is_valid_for_every_parameter() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.gr");
    let gen = run(&["gen", "--model", "er", "--n", "9", "--p", "0.4", "--seed", "11", "--output", graph.to_str().unwrap()]);
    assert!(gen.status.success());
    let order = write(dir.path(), "order.txt", "1 < 2\n2 < 5\n3 < 9\n");
    let order = order.to_str().unwrap();
    let td = dir.path().join("w.td");
    let td = td.to_str().unwrap();
    let g = graph.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["--param", "tw"],
        vec!["--param", "pw"],
        vec!["--param", "td"],
        vec!["--param", "twq", "--q", "1"],
        vec!["--param", "dtw", "--order", order],
    ];
    for extra in cases {
        let mut solve = vec!["solve", "--input", g, "--output-td", td];
        solve.extend(&extra);
        let o = run(&solve);
        assert!(o.status.success(), "{extra:?}");
        let value: usize = stdout(&o).trim().rsplit(' ').next().unwrap().parse().unwrap();
        let mut verify = vec!["verify", "--graph", g, "--td", td];
        verify.extend(&extra);
        let v = run(&verify);
        let text = stdout(&v);
        assert_eq!(v.status.code(), Some(0), "{extra:?}: {text}");
        assert!(text.starts_with("VALID "), "{text}");
        let field = if extra[1] == "td" { "depth" } else { "width" };
        assert!(text.contains(&format!("{field}={value} ")), "{extra:?}: {text}");
    }
}

#[test]
fn verify_rejects_broken_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "p3.gr", "p tw 3 2\n1 2\n2 3\n");
    let g = g.to_str().unwrap();
    let good = write(dir.path(), "good.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    assert_eq!(run(&["verify", "--graph", g, "--td", good.to_str().unwrap()]).status.code(), Some(0));

    let dropped = write(dir.path(), "dropped.td", "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n");
    let o = run(&["verify", "--graph", g, "--td", dropped.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INVALID"));
    assert!(stdout(&o).contains("edge 2 3 is in no bag"), "{}", stdout(&o));

    let claim = write(dir.path(), "claim.td", "s td 2 3 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    let o = run(&["verify", "--graph", g, "--td", claim.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("header claims width 2"), "{}", stdout(&o));

    let o = run(&["verify", "--graph", g, "--td", good.to_str().unwrap(), "--param", "td"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(run(&["solve", "--named", "grotzsch", "--param", "tw", "--q", "1"]).status.code(), Some(64));
    assert_eq!(run(&["solve", "--bogus"]).status.code(), Some(64));
    assert_eq!(run(&["solve", "--named", "nowhere"]).status.code(), Some(64));
    let o = run_stdin(&["solve", "--input", "-"], "p tw 2 1\n1 3\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let dir = tempfile::tempdir().unwrap();
    let cyclic = write(dir.path(), "o.txt", "1 < 2\n2 < 1\n");
    let o = run(&["solve", "--named", "grotzsch", "--param", "dtw", "--order", cyclic.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycle"));
}

#[test]
fn budget_abort_exits_two_with_bound() {
    let o = run(&["solve", "--named", "heawood", "--memory-budget", "8K"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("tw >= "));
}

#[test]
fn generator_examples() {
    let o = run(&["gen", "--model", "er", "--n", "25", "--p", "0", "--seed", "1"]);
    assert!(stdout(&o).lines().any(|l| l == "p tw 25 0"));
    let o = run(&["gen", "--model", "pnk", "--n", "3", "--k", "2"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("p tw 8 ")));
    for param in ["tw", "pw"] {
        let s = run_stdin(&["solve", "--param", param, "--input", "-"], &text);
        assert_eq!(stdout(&s), format!("{param} = 3\n"));
    }
}

#[test]
fn pnk_colosseum_lower_bound() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("p62.gr");
    run(&["gen", "--model", "pnk", "--n", "6", "--k", "2", "--output", g.to_str().unwrap()]);
    let o = run(&["stats", "--corpus", dir.path().to_str().unwrap()]);
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[3], "4");
    let colosseum: u128 = fields[6].parse().unwrap();
    let bound: u128 = (1..=4).map(|i| binomial(12, i)).sum();
    assert!(colosseum >= bound, "{colosseum} < {bound}");
}

#[test]
fn stats_rows_for_named_graphs() {
    let o = run(&["stats", "--only", "grotzsch", "--only", "heawood"]);
    assert_eq!(
        stdout(&o),
        "graph,n,m,k,pit,arena,colosseum\nGrotzsch,11,20,6,1235,660,1853\nHeawood,14,21,6,5601,6864,9984\n"
    );
    let o = run(&["stats", "--only", "heawood", "--max-n", "10"]);
    assert!(stdout(&o).ends_with(",-\n"));
}

#[test]
fn growth_rows_stay_below_the_optimum() {
    let o = run(&["stats", "--only", "grotzsch", "--only", "goldner harary", "--growth"]);
    let text = stdout(&o);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        names.push(f[0].to_string());
        rows.push(f[3..].iter().map(|x| x.parse().unwrap()).collect());
    }
    for name in ["Grotzsch", "Goldner Harary"] {
        let mine: Vec<&Vec<u64>> = names.iter().zip(&rows).filter(|(n, _)| *n == name).map(|(_, r)| r).collect();
        let best = mine.last().unwrap();
        assert_eq!(mine.first().unwrap()[0], 2);
        for r in &mine[..mine.len() - 1] {
            assert!(r[1] < best[1], "{name}: {r:?} vs {best:?}");
            assert!(r[1] < r[3], "{name}: {r:?}");
        }
    }
}

#[test]
fn bench_single_trial_matches_stats() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("er.gr");
    run(&["gen", "--model", "er", "--n", "12", "--seed", "77", "--output", g.to_str().unwrap()]);
    let stats = stdout(&run(&["stats", "--corpus", dir.path().to_str().unwrap()]));
    let stats_row = stats.lines().nth(1).unwrap();
    let bench = stdout(&run(&["bench", "--model", "er", "--n", "12", "--trials", "1", "--seed", "77"]));
    let bench_row = bench.lines().nth(1).unwrap();
    let tail = |s: &str, skip: usize| s.split(',').skip(skip).collect::<Vec<_>>().join(",");
    assert_eq!(tail(stats_row, 1), tail(bench_row, 2));
}

#[test]
fn bench_mean_pit_below_mean_colosseum() {
    let o = run(&["bench", "--model", "er", "--n", "10", "--p", "0.33", "--trials", "25", "--seed", "1"]);
    let text = stdout(&o);
    let mean = text.lines().last().unwrap();
    let f: Vec<f64> = mean.split(',').skip(2).map(|x| x.parse().unwrap()).collect();
    assert!(f[3] <= f[5], "{mean}");
    assert_eq!(text.lines().count(), 27);
}

#[test]
fn trace_lines_go_to_stderr() {
    let o = run_stdin(&["solve", "--input", "-", "--decide", "2", "--trace"], "p tw 3 2\n1 2\n2 3\n");
    assert_eq!(stdout(&o), "tw <= 1\n");
    let trace = String::from_utf8(o.stderr).unwrap();
    assert!(trace.lines().take(2).eq(["seed 1 1", "seed 3 1"]), "{trace}");
}

#[test]
fn col_output_round_trips() {
    let col = stdout(&run(&["gen", "--model", "ba", "--n", "12", "--K", "2", "--seed", "5", "--format", "col"]));
    let gr = stdout(&run(&["gen", "--model", "ba", "--n", "12", "--K", "2", "--seed", "5"]));
    let a = pidwidth::io::parse_col(&col).unwrap();
    let b = pidwidth::io::parse_gr(&gr).unwrap();
    assert_eq!((a.n, a.edges), (b.n, b.edges));
}
