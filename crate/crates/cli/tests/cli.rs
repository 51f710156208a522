use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gainarb_core::extraction::parse_stage;
use gainarb_core::graph::format::{parse_certificate, parse_graph, write_certificate, write_graph};
use tempfile::TempDir;

fn gainarb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gainarb")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn k5(dir: &TempDir) -> PathBuf {
    let path = dir.path().join("k5.graph");
    let out = gainarb(&[
        "gen", "lower-bound", "--group", "Z", "--a", "finite [(3)]", "--x", "(1)", "--t", "3", "-o", s(&path),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "d = 3, n = 5");
    path
}

#[test]
fn arb_witness_verifies() {
    let dir = TempDir::new().unwrap();
    let graph = k5(&dir);
    let cert = dir.path().join("k5.cert");
    let out = gainarb(&["arb", s(&graph), "-o", s(&cert)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "arb: 3");
    let out = gainarb(&["verify", s(&graph), s(&cert)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("OK"));
    let out = gainarb(&["arb-oracle", s(&graph)]);
    assert_eq!(stdout(&out).trim(), "arb: 3");
}

#[test]
fn no_long_cycle_in_lower_bound_instance() {
    let dir = TempDir::new().unwrap();
    let graph = k5(&dir);
    let out = gainarb(&["find-cycle", s(&graph), "--min-len", "4"]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "none"));
    let out = gainarb(&["find-cycle", s(&graph), "--min-len", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("certificate: cycle"));
}

#[test]
fn emitted_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let graph = k5(&dir);
    let text = fs::read_to_string(&graph).unwrap();
    let (g, a) = parse_graph(&text).unwrap();
    assert_eq!(write_graph(&g, &a), text);
    let out = gainarb(&["arb", s(&graph)]);
    let cert_text = stdout(&out);
    let cert = parse_certificate(&cert_text, g.group()).unwrap();
    assert_eq!(write_certificate(&cert.graph_sha256, &cert.cert), cert_text);
}

#[test]
fn tampered_certificates_fail() {
    let dir = TempDir::new().unwrap();
    let graph = k5(&dir);
    let cert_text = stdout(&gainarb(&["arb", s(&graph)]));
    let merged = cert_text
        .lines()
        .map(|l| match l {
            l if l.starts_with("parts:") => "parts: 1".to_string(),
            l if l.starts_with("assignment:") => "assignment: 1 1 1 1 1".to_string(),
            l => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let cert = file(&dir, "bad.cert", &merged);
    let out = gainarb(&["verify", s(&graph), s(&cert)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("part-A-cycle-free"));

    let other = file(&dir, "other.graph", "group: Z\nvertices: 5\nA: finite [(4)]\n");
    let good = file(&dir, "good.cert", &cert_text);
    let out = gainarb(&["verify", s(&other), s(&good)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("graph-hash"));
}

#[test]
fn malformed_input_exits_3_with_line() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.graph", "# header\ngroup: Z x Q\nvertices: 1\nA: finite [(0)]\n");
    let out = gainarb(&["arb", s(&bad)]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
    assert_eq!(code(&gainarb(&["arb"])), 3);
    assert_eq!(code(&gainarb(&["gen", "eta", "--vertices", "3", "--edges", "0:1"])), 3);
}

#[test]
fn preconditions_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = gainarb(&["gen", "lower-bound", "--group", "Z", "--a", "finite [(3); (6)]", "--x", "(1)", "--t", "2"]);
    assert_eq!(code(&out), 2);
    let out = gainarb(&["gen", "blocks", "--group", "Z/3", "--a", "cofinite [(0)]", "--y", "(1)", "--t", "2"]);
    assert_eq!(code(&out), 2);
    let graph = k5(&dir);
    let out = gainarb(&["arb", s(&graph), "--budget", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("budget"));
    let out = gainarb(&["extract-cycle", s(&graph), "--d", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("finite complement"));
    let tri = file(&dir, "tri.graph", TRIANGLES);
    let out = gainarb(&["extract-cycle", s(&tri), "--d", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("threshold 384"), "{}", stderr(&out));
    assert_eq!(code(&gainarb(&["arb", "/nonexistent/graph"])), 2);
}

#[test]
fn generators_meet_their_claims() {
    let dir = TempDir::new().unwrap();
    let blocks = dir.path().join("blocks.graph");
    let out = gainarb(&[
        "gen", "blocks", "--group", "Z", "--a", "cofinite [(0)]", "--y", "(1)", "--t", "2", "-o", s(&blocks),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&gainarb(&["arb-oracle", s(&blocks)])).trim(), "arb: 2");

    let lemma = dir.path().join("lemma.graph");
    let out = gainarb(&[
        "gen", "least-multiple", "--group", "Z/4", "--a", "finite [(2)]", "--x", "(2)", "--t", "3", "-o", s(&lemma),
    ]);
    assert_eq!(stdout(&out).trim(), "l = 3, n = 5");
    assert_eq!(stdout(&gainarb(&["arb-oracle", s(&lemma)])).trim(), "arb: 3");

    let out = gainarb(&["gen", "eta", "--vertices", "4", "--edges", "0-1,1-2,2-3,0-3", "--marked", "0-1,2-3"]);
    let eta = file(&dir, "eta.graph", &stdout(&out));
    assert_eq!(stdout(&gainarb(&["arb-oracle", s(&eta)])).trim(), "arb: 1");
}

#[test]
fn bounds_prints_exact_values() {
    let out = gainarb(&["bounds", "--omega", "1", "--t", "2", "--d", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("f_1(2,1) = 251658240"));
    assert!(text.contains("stub: Ramsey numbers replaced by upper bounds"));
}

const TRIANGLES: &str = "\
group: Z/3
vertices: 13
A: cofinite [(0)]
0 1 (1)
0 2 (0)
1 2 (0)
3 4 (1)
3 5 (0)
4 5 (0)
6 7 (1)
6 8 (0)
7 8 (0)
0 9 (0)
3 9 (0)
3 10 (0)
6 10 (0)
1 11 (0)
4 11 (0)
4 12 (0)
7 12 (0)
";

const TRIANGLE_STAGE: &str = "\
stage: long-cycle
sets: 4
S 0: 0 1 2 3 4 5 6 7 8 9 10 11 12
S 1: 0 1 2 3 4 5 6 7 8 10 11 12
S 2: 0 1 2 3 4 5 6 7 8 11 12
S 3: 0 1 2 3 4 5 6 7 8 12
S 4: 0 1 2 3 4 5 6 7 8
";

#[test]
fn staged_extraction_emits_verified_cycle() {
    parse_stage(TRIANGLE_STAGE).unwrap();
    let dir = TempDir::new().unwrap();
    let graph = file(&dir, "tri.graph", TRIANGLES);
    let stage = file(&dir, "tri.stage", TRIANGLE_STAGE);
    let cert = dir.path().join("tri.cert");
    let out = gainarb(&["extract-cycle", s(&graph), "--d", "4", "--staged", s(&stage), "-o", s(&cert)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = gainarb(&["verify", s(&graph), s(&cert)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let wrong_kind = file(&dir, "sub.stage", &TRIANGLE_STAGE.replace("long-cycle", "subdivision"));
    let out = gainarb(&["extract-cycle", s(&graph), "--d", "4", "--staged", s(&wrong_kind)]);
    assert_eq!(code(&out), 2);
    let broken = file(&dir, "broken.stage", "stage: long-cycle\nsets: x\n");
    let out = gainarb(&["extract-cycle", s(&graph), "--d", "4", "--staged", s(&broken)]);
    assert_eq!(code(&out), 3);
}

#[test]
fn least_multiple_alias() {
    let out = gainarb(&["gen", "lemma31", "--group", "Z", "--a", "finite [(4)]", "--x", "(1)", "--t", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stderr(&out).trim(), "l = 4, n = 4");
}
