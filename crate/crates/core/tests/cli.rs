use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbithom"))
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn analyze_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let p7 = write(dir.path(), "p7.pattern", "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n");
    let out = run(&["analyze", "--pattern", &p7]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("LIPCO: 6"));
    assert!(text.contains("verdict: CONJECTURALLY-HARD"));

    let out = run(&["analyze", "--pattern", &p7, "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["lipco"], 6);
    assert_eq!(json["verdict"], "CONJECTURALLY-HARD");
    assert_eq!(json["orbits"].as_array().unwrap().len(), 4);
}

#[test]
fn count_writes_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.pattern", "0 1\n1 2\n0 2\n");
    let k4 = write(dir.path(), "k4.graph", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out_path = dir.path().join("out.tsv");
    let out = run(&[
        "count",
        "--pattern",
        &k3,
        "--graph",
        &k4,
        "--out",
        out_path.to_str().unwrap(),
        "--threads",
        "2",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        fs::read_to_string(&out_path).unwrap(),
        "vertex\torbit_rep\tcount\n0\t0\t18\n1\t0\t18\n2\t0\t18\n3\t0\t18\n"
    );
    let summary = stdout(&out);
    assert!(summary.contains("Hom(H,G)=24"));
    assert!(summary.contains("Agg(orbit 0)=72"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p7 = write(dir.path(), "p7.pattern", "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n");
    let g = write(dir.path(), "g.graph", "0 1\n1 2\n");
    let out_path = dir.path().join("out.tsv");
    let out_str = out_path.to_str().unwrap();

    let refused = run(&["count", "--pattern", &p7, "--graph", &g, "--out", out_str]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("LIPCO"));

    let looped = write(dir.path(), "loop.graph", "0 1\n2 2\n");
    let bad = run(&[
        "count",
        "--pattern",
        &g,
        "--graph",
        &looped,
        "--out",
        out_str,
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("self_loop"));

    let missing = run(&["analyze", "--pattern", "/nonexistent/x.pattern"]);
    assert_eq!(missing.status.code(), Some(1));

    let zero_threads = run(&[
        "count",
        "--pattern",
        &g,
        "--graph",
        &g,
        "--out",
        out_str,
        "--threads",
        "0",
    ]);
    assert_ne!(zero_threads.status.code(), Some(0));

    let big = write(
        dir.path(),
        "big.pattern",
        "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n",
    );
    let too_large = run(&["analyze", "--pattern", &big]);
    assert_eq!(too_large.status.code(), Some(1));
}

#[test]
fn shipped_corpus_verifies() {
    let out = run(&["verify", "--corpus", corpus().to_str().unwrap()]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("PASS c5_0"));
    assert!(text.contains("SKIP p7_0"));
}

#[test]
fn verify_reports_off_by_one_fixture() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k2.pattern", "0 1\n");
    write(dir.path(), "k2.graph", "0 1\n1 2\n0 2\n");
    write(
        dir.path(),
        "k2.expected",
        "vertex\torbit_rep\tcount\n0\t0\t4\n1\t0\t5\n2\t0\t4\n",
    );
    let out = run(&["verify", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(text.contains("FAIL k2"), "{text}");
    assert!(text.contains("line 3"), "{text}");
}

#[test]
fn verify_empty_corpus_passes_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--corpus", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("warning: no *.pattern files"));
    assert!(text.contains("PASS: 0 fixture(s)"));
}

#[test]
fn bench_prints_rows() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.pattern", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = run(&[
        "bench",
        "--pattern",
        &c5,
        "--sizes",
        "100,200",
        "--runs",
        "1",
        "--seed",
        "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "seed 4");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("100\t"));
}
