use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn cdwg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cdwg"))
}

fn run(args: &[&str]) -> Output {
    cdwg().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, bytes: &[u8]) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, bytes).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes `text` and indexes it, returning the index path.
fn indexed(dir: &TempDir, text: &[u8], extra: &[&str]) -> PathBuf {
    let input = write(dir, "input.txt", text);
    let out = dir.path().join("input.cdwg");
    let mut args = vec!["index", s(&input), "--out", s(&out)];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

const RUNNING: &[u8] = b"ababcbababcbc";

#[test]
fn index_reports_running_example_stats() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s.txt", RUNNING);
    let o = run(&["index", s(&input), "--sentinels", "end"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n=14 sigma=4 "), "{}", stdout(&o));
}

#[test]
fn empty_input_with_both_sentinels() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.txt", b"");
    let o = run(&["index", s(&input), "--sentinels", "both"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n=2 sigma=2 "));
    assert_eq!(run(&["index", s(&input), "--sentinels", "none"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.txt");
    assert_eq!(run(&["index", s(&missing)]).status.code(), Some(1));

    let reserved = write(&dir, "bin.txt", b"ab\x00c");
    assert_eq!(run(&["index", s(&reserved)]).status.code(), Some(2));

    let ok = write(&dir, "ok.txt", b"abc");
    let bad_out = dir.path().join("no/such/dir/x.cdwg");
    assert_eq!(run(&["index", s(&ok), "--out", s(&bad_out)]).status.code(), Some(3));

    assert_eq!(run(&["index"]).status.code(), Some(4));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let idx = indexed(&dir, RUNNING, &[]);
    assert_eq!(run(&["enumerate", s(&idx), "--min-len", "3", "--max-len", "5"]).status.code(), Some(4));
    assert_eq!(run(&["enumerate", s(&idx), "--set", "ebf", "--k", "2"]).status.code(), Some(4));
    assert_eq!(run(&["enumerate", s(&idx), "--max-len", "1"]).status.code(), Some(4));
    assert_eq!(run(&["enumerate", s(&ok)]).status.code(), Some(1));
}

#[test]
fn enumerate_running_example() {
    let dir = TempDir::new().unwrap();
    let idx = indexed(&dir, RUNNING, &["--sentinels", "end"]);
    let plain = stdout(&run(&["enumerate", s(&idx), "--set", "maw"]));
    assert!(plain.lines().any(|l| l == "cbcb"));
    let min2 = stdout(&run(&["enumerate", s(&idx), "--set", "maw", "--min-len", "2"]));
    assert_eq!(plain, min2);
    let count = stdout(&run(&["enumerate", s(&idx), "--format", "count"]));
    assert_eq!(count.trim().parse::<usize>().unwrap(), plain.lines().count());
    let limited = stdout(&run(&["enumerate", s(&idx), "--limit", "3"]));
    assert_eq!(limited.lines().collect::<Vec<_>>(), plain.lines().take(3).collect::<Vec<_>>());
}

#[test]
fn tsv_agrees_with_plain() {
    let dir = TempDir::new().unwrap();
    let idx = indexed(&dir, b"abracadabra", &[]);
    for set in ["maw", "ebf", "mrw", "mus"] {
        let plain = stdout(&run(&["enumerate", s(&idx), "--set", set]));
        let tsv = stdout(&run(&["enumerate", s(&idx), "--set", set, "--format", "tsv"]));
        let mut rows = tsv.lines();
        assert!(rows.next().unwrap().starts_with("word\tlength\tkind"));
        let words: Vec<&str> = rows.clone().map(|r| r.split('\t').next().unwrap()).collect();
        assert_eq!(words, plain.lines().collect::<Vec<_>>(), "{set}");
        for r in rows {
            let cols: Vec<&str> = r.split('\t').collect();
            assert_eq!(cols.len(), 10);
            assert_eq!(cols[2], set);
            // The triple is a·u·b; a and b are single (possibly escaped) symbols.
            let a = cols[4];
            let b = cols[6];
            let (first, last) = if cols[7] == "1" { (b, a) } else { (a, b) };
            assert!(cols[0].starts_with(first) && cols[0].ends_with(last), "{r}");
        }
    }
}

#[test]
fn mrw_k_zero_is_maw_and_k_one_is_mus() {
    let dir = TempDir::new().unwrap();
    let idx = indexed(&dir, b"mississippi", &[]);
    let maw = stdout(&run(&["enumerate", s(&idx), "--set", "maw"]));
    let k0 = stdout(&run(&["enumerate", s(&idx), "--set", "mrw", "--k", "0"]));
    assert_eq!(maw, k0);
    let mut mus: Vec<String> = stdout(&run(&["enumerate", s(&idx), "--set", "mus"])).lines().map(String::from).collect();
    let mut k1: Vec<String> =
        stdout(&run(&["enumerate", s(&idx), "--set", "mrw", "--k", "1"])).lines().map(String::from).collect();
    mus.sort();
    k1.sort();
    assert_eq!(mus, k1);
}

#[test]
fn retained_text_does_not_change_streams() {
    let dir = TempDir::new().unwrap();
    let a = indexed(&dir, b"the quick brown fox jumps over the lazy dog", &[]);
    let a_copy = dir.path().join("a.cdwg");
    fs::rename(&a, &a_copy).unwrap();
    let b = indexed(&dir, b"the quick brown fox jumps over the lazy dog", &["--retain-text"]);
    for set in ["maw", "ebf", "mrw", "mus"] {
        let x = run(&["enumerate", s(&a_copy), "--set", set]).stdout;
        let y = run(&["enumerate", s(&b), "--set", set]).stdout;
        assert_eq!(x, y, "{set}");
    }
}

#[test]
fn stdin_input_and_pretty_output() {
    let mut child = cdwg()
        .args(["index", "-", "--sentinels", "both"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"ab").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(stdout(&o).starts_with("n=4 "));

    let dir = TempDir::new().unwrap();
    let idx = indexed(&dir, b"ab", &[]);
    let pretty = stdout(&run(&["enumerate", s(&idx), "--set", "ebf", "--pretty"]));
    let mut words: Vec<&str> = pretty.lines().collect();
    words.sort();
    assert_eq!(words, ["ab", "b$", "♯a"]);
    let raw = stdout(&run(&["enumerate", s(&idx), "--set", "ebf"]));
    assert!(raw.contains("\\x01a"));
}

#[test]
fn check_passes_and_catches_faults() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "s.txt", RUNNING);
    let o = run(&["check", s(&input), "--sentinels", "end"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS oracle-maw"));

    let o = run(&["check", s(&input), "--inject-fault"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stdout(&o).contains("FAIL weiner-chars"));

    let idx = indexed(&dir, RUNNING, &[]);
    assert_eq!(run(&["check", "--index", s(&idx)]).status.code(), Some(0));
}

#[test]
fn check_large_random_text_runs_bounds_only() {
    use std::fmt::Write as _;
    let dir = TempDir::new().unwrap();
    let mut text = String::new();
    let mut x: u64 = 88172645463325252;
    for _ in 0..1000 {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        let _ = write!(text, "{}", if x & 1 == 0 { 'a' } else { 'b' });
    }
    let input = write(&dir, "r.txt", text.as_bytes());
    let o = cdwg()
        .args(["check", s(&input)])
        .env("CDWG_ORACLE_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP oracle: text length 1002 exceeds oracle cap 100"));

    let o = cdwg().args(["check", s(&input)]).env("CDWG_ORACLE_CAP", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn corrupt_and_future_index_files_are_refused() {
    let dir = TempDir::new().unwrap();
    let idx = indexed(&dir, RUNNING, &[]);
    let mut bytes = fs::read(&idx).unwrap();
    let truncated = write(&dir, "short.cdwg", &bytes[..bytes.len() / 2]);
    assert_eq!(run(&["enumerate", s(&truncated)]).status.code(), Some(1));
    bytes[4] = 99;
    let future = write(&dir, "future.cdwg", &bytes);
    let o = run(&["enumerate", s(&future)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("newer"));
}

#[test]
fn bench_writes_csv() {
    let o = run(&["bench", "--family", "fib", "--k-min", "10", "--k-max", "14"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("family,param,n,sigma,e_r,e_l,e_min,nodes,maw,ebf,mrw"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][2], "55");

    let o = run(&["bench", "--family", "debruijn", "--sigma", "2", "--k-min", "3", "--k-max", "6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 5);

    let o = run(&["bench", "--family", "random", "--sigma", "26", "--n", "500,2000"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
}

/// Minimal structural check of the DOT output: one graph, balanced braces,
/// every statement terminated and every edge between declared nodes.
fn assert_dot(dot: &str) -> (usize, usize) {
    assert!(dot.starts_with("digraph "));
    assert!(dot.trim_end().ends_with('}'));
    let mut nodes = std::collections::HashSet::new();
    let mut edges = 0;
    for line in dot.lines().skip(1) {
        let line = line.trim();
        if line == "}" {
            continue;
        }
        assert!(line.ends_with(';'), "{line}");
        if let Some((lhs, _)) = line.split_once(" -> ") {
            let rhs = line[lhs.len() + 4..].split([' ', ';']).next().unwrap();
            assert!(nodes.contains(lhs) && nodes.contains(rhs), "{line}");
            if !line.contains("dashed") && !line.contains("bold") {
                edges += 1;
            }
        } else if let Some((name, _)) = line.split_once(" [label=") {
            nodes.insert(name.to_string());
        }
    }
    (nodes.len(), edges)
}

#[test]
fn dot_export() {
    let dir = TempDir::new().unwrap();
    let idx = indexed(&dir, RUNNING, &["--sentinels", "end", "--orientation", "forward", "--retain-text"]);
    let dot = stdout(&run(&["dot", s(&idx), "--graph", "cdawg"]));
    assert_dot(&dot);
    assert!(dot.contains("label=\"ababcb\""), "{dot}");
    let lpt = stdout(&run(&["dot", s(&idx), "--graph", "lpt"]));
    assert_dot(&lpt);
    assert!(lpt.contains("fillcolor=gray80"));
    assert!(lpt.contains("style=bold"));

    let small = indexed(&dir, b"ab", &["--sentinels", "both"]);
    let dot = stdout(&run(&["dot", s(&small)]));
    assert_eq!(assert_dot(&dot), (2, 4));
}
