use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_halfscan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn halfscan")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn p(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn planted(dir: &Path, n: usize, gap: f64, seed: u64) -> PathBuf {
    let path = p(dir, &format!("planted_{n}_{seed}.csv"));
    let meta = ok_json(&[
        "--seed",
        &seed.to_string(),
        "--out",
        s(&path),
        "gen",
        "planted",
        "--n",
        &n.to_string(),
        "--gap",
        &gap.to_string(),
    ]);
    assert!(meta["meta"]["gap"].as_f64().unwrap() >= gap);
    path
}

#[test]
fn planted_gap_is_found_by_exact_scan() {
    let dir = tempfile::tempdir().unwrap();
    let pts = planted(dir.path(), 5000, 0.6, 1);
    let r = ok_json(&["scan", "--points", s(&pts), "--mode", "exact", "--phi", "disc"]);
    let v = r["result"]["value"].as_f64().unwrap();
    assert!(v >= 0.6, "exact value {v}");
}

#[test]
fn approx_scan_tracks_exact_on_planted_data() {
    let dir = tempfile::tempdir().unwrap();
    let pts = planted(dir.path(), 2000, 0.4, 2);
    let exact = ok_json(&["scan", "--points", s(&pts), "--mode", "exact"])["result"]["value"].as_f64().unwrap();
    let mut good = 0;
    for seed in 0..10 {
        let r = ok_json(&["--seed", &seed.to_string(), "scan", "--points", s(&pts), "--eps", "0.05"]);
        if r["result"]["value"].as_f64().unwrap() >= exact - 0.05 {
            good += 1;
        }
    }
    assert!(good >= 9, "{good}/10 seeds within 0.05 of {exact}");
}

fn uniform(dir: &Path, n: usize, seed: u64) -> PathBuf {
    let path = p(dir, &format!("uniform_{n}_{seed}.csv"));
    ok_json(&["--seed", &seed.to_string(), "--out", s(&path), "gen", "uniform", "--n", &n.to_string()]);
    path
}

fn queries(dir: &Path) -> PathBuf {
    let path = p(dir, "queries.csv");
    let mut text = String::from("a,b,side\n");
    for i in 0..200 {
        let a = -2.0 + 4.0 * (i as f64) / 199.0;
        let y = 0.1 + 0.8 * ((i * 37 % 200) as f64) / 199.0;
        let side = if i % 2 == 0 { "below" } else { "above" };
        text += &format!("{a},{},{side}\n", y - a * 0.5);
    }
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn count_oracle_error_within_eps() {
    let dir = tempfile::tempdir().unwrap();
    let pts = uniform(dir.path(), 10_000, 4);
    let q = queries(dir.path());
    let r = ok_json(&["count", "--points", s(&pts), "--queries", s(&q), "--eps", "0.05", "--oracle"]);
    let max = r["result"]["errors"]["max_error"].as_f64().unwrap();
    assert!(max <= 0.05 * 10_000.0, "max error {max}");
    assert_eq!(r["result"]["stats"]["level_size_violations"], 0);
    assert_eq!(r["result"]["queries"], 200);
}

#[test]
fn saved_index_decodes() {
    let dir = tempfile::tempdir().unwrap();
    let pts = uniform(dir.path(), 3000, 5);
    let q = queries(dir.path());
    let idx_path = p(dir.path(), "index.bin");
    ok_json(&["count", "--points", s(&pts), "--queries", s(&q), "--save-index", s(&idx_path)]);
    let bytes = std::fs::read(&idx_path).unwrap();
    assert_eq!(&bytes[..4], b"HSCI");
    let idx = halfscan::counter::decode_index(&bytes).unwrap();
    assert_eq!(idx.total_mass(), 3000.0);
}

#[test]
fn malformed_csv_exits_2_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = p(dir.path(), "bad.csv");
    std::fs::write(&bad, "x,y,color,weight\n0.1,0.2,R,1\n0.3,oops,B,1\n").unwrap();
    let out = run(&["scan", "--points", s(&bad), "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":3:"), "stderr: {err}");

    std::fs::write(&bad, "0.1,0.2,G\n").unwrap();
    let out = run(&["scan", "--points", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":1:"));

    let q = p(dir.path(), "q.csv");
    std::fs::write(&q, "a,b,side\n1,2,below\n1,2\n").unwrap();
    let pts = uniform(dir.path(), 10, 1);
    let out = run(&["count", "--points", s(&pts), "--queries", s(&q)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":3:"));
}

#[test]
fn guard_violation_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let pts = uniform(dir.path(), 501, 6);
    let out = run(&["scan", "--points", s(&pts), "--mode", "brute"]);
    assert_eq!(out.status.code(), Some(3));

    let gadget = p(dir.path(), "g.csv");
    let out = run(&["--out", s(&gadget), "gen", "clique-gadget", "--n", "26", "--check"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["scan", "--mode", "sideways"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let pts = uniform(dir.path(), 10, 1);
    assert_eq!(run(&["scan", "--points", s(&pts), "--eps", "1.5"]).status.code(), Some(1));
}

#[test]
fn payloads_are_reproducible_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let pts = planted(dir.path(), 3000, 0.3, 7);
    let q = queries(dir.path());
    let scan = |threads: &str| {
        ok_json(&["--seed", "11", "--threads", threads, "scan", "--points", s(&pts), "--eps", "0.1"])["result"]
            .to_string()
    };
    let first = scan("1");
    assert_eq!(first, scan("1"));
    assert_eq!(first, scan("4"));
    let count = |threads: &str| {
        let r = ok_json(&[
            "--seed",
            "11",
            "--threads",
            threads,
            "count",
            "--points",
            s(&pts),
            "--queries",
            s(&q),
            "--per-query",
            "--oracle",
        ]);
        r["result"].to_string()
    };
    assert_eq!(count("1"), count("3"));
    let other = ok_json(&["--seed", "12", "scan", "--points", s(&pts), "--eps", "0.1"])["result"].to_string();
    assert!(!other.is_empty());
}

#[test]
fn gen_csv_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = uniform(dir.path(), 500, 8);
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().skip(1) {
        for field in line.split(',').filter(|f| *f != "R" && *f != "B") {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), field);
        }
    }
    // the same seed writes the same bytes
    let again = p(dir.path(), "again.csv");
    ok_json(&["--seed", "8", "--out", s(&again), "gen", "uniform", "--n", "500"]);
    assert_eq!(std::fs::read(&again).unwrap(), text.as_bytes());
}

#[test]
fn bench_writes_one_csv_row_per_eps_and_rep() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = p(dir.path(), "bench.csv");
    let r = ok_json(&[
        "bench", "--n", "2000", "--eps", "0.2,0.1", "--reps", "2", "--queries", "50", "--csv", s(&csv_path),
    ]);
    assert_eq!(r["result"]["rows"].as_array().unwrap().len(), 4);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("eps,rep,"));
    assert!(r["timings"]["rows"][0]["build_ns"].as_u64().is_some());
}

#[test]
fn line_covering_instance_scans() {
    let dir = tempfile::tempdir().unwrap();
    let rays = p(dir.path(), "rays.csv");
    let pts = p(dir.path(), "lc.csv");
    let meta = ok_json(&[
        "--seed", "3", "--out", s(&rays), "gen", "line-covering", "--m", "20", "--k", "4", "--planted", "--points-out",
        s(&pts),
    ]);
    assert_eq!(meta["meta"]["cover_exists"], true);
    let red = meta["meta"]["red"].as_f64().unwrap();
    let r = ok_json(&["scan", "--points", s(&pts), "--mode", "exact", "--phi", "line-cover", "--k", "4"]);
    assert_eq!(r["config"]["side"], "below");
    assert!(r["result"]["value"].as_f64().unwrap() <= red);
    assert!(std::fs::read_to_string(&rays).unwrap().starts_with("x,y,dir\n"));
}

#[test]
fn clique_gadget_check_and_graph_input() {
    let dir = tempfile::tempdir().unwrap();
    let lines = p(dir.path(), "gadget.csv");
    let graph = p(dir.path(), "graph.csv");
    let meta = ok_json(&[
        "--seed", "5", "--out", s(&lines), "gen", "clique-gadget", "--n", "2", "--graph-out", s(&graph), "--check",
    ]);
    assert_eq!(meta["meta"]["lines"], 6 * 2 * 2);
    assert_eq!(meta["meta"]["check"]["max_matches"], true);
    assert_eq!(meta["meta"]["check"]["unintended_triples"], 0);

    let again = p(dir.path(), "gadget2.csv");
    let meta2 = ok_json(&["--out", s(&again), "gen", "clique-gadget", "--graph", s(&graph), "--check"]);
    assert_eq!(meta2["meta"]["check"]["max_weight"], meta["meta"]["check"]["max_weight"]);
    assert_eq!(std::fs::read(&lines).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn log_level_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let pts = uniform(dir.path(), 50, 1);
    let out = bin()
        .env("HALFSCAN_LOG", "info")
        .args(["scan", "--points", s(&pts), "--mode", "exact"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("scan: 50 points"));
    let quiet = bin().env("HALFSCAN_LOG", "error").args(["scan", "--points", s(&pts), "--mode", "exact"]).output().unwrap();
    assert!(quiet.stderr.is_empty());
}
