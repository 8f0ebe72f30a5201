use std::path::PathBuf;
use std::process::{Command, Output};

use bipartify::Graph;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bipartify"));
    c.env_remove("BIPARTIFY_SEED");
    c
}

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/worked_example.edges")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_lists_all_methods() {
    let f = fixture();
    let o = run(&[
        "analyze",
        f.to_str().unwrap(),
        "--methods",
        "all",
        "--restarts",
        "100",
        "--seed",
        "7",
    ]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 8);
    let ls = rows.iter().find(|r| r.starts_with("local-switching")).unwrap();
    assert!(ls.split_whitespace().nth(1) == Some("5/6"), "{ls}");
}

#[test]
fn analyze_json_and_csv() {
    let f = fixture();
    let o = run(&[
        "analyze",
        f.to_str().unwrap(),
        "--methods",
        "eigen-nl,greedy-phi-nl",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["methods"].as_array().unwrap().len(), 2);
    assert_eq!(v["methods"][1]["removed"], serde_json::json!([[2, 4]]));
    let o = run(&[
        "analyze",
        f.to_str().unwrap(),
        "--methods",
        "eigen-a",
        "--seed",
        "1",
        "--format",
        "csv",
    ]);
    assert!(stdout(&o).starts_with("method,r_b_num,r_b_den"));
}

#[test]
fn oracle_reports_optimum() {
    let f = fixture();
    let o = run(&["oracle", f.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("max_cut=5 r_b_opt=5/6\n"), "{out}");
    assert!(out.contains("X={0,3} Y={1,2,4}"), "{out}");
}

#[test]
fn score_edges_csv() {
    let f = fixture();
    let o = run(&["score-edges", f.to_str().unwrap(), "--index", "phi-nl"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 7);
    let top = out.lines().find(|l| l.starts_with("2,4,")).unwrap();
    let v: f64 = top.rsplit(',').next().unwrap().parse().unwrap();
    assert!((v - 0.25).abs() < 1e-12, "{out}");
}

#[test]
fn generate_round_trips_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.edges");
    for model in ["er", "ws", "rg", "ba"] {
        let o = run(&[
            "generate",
            "--model",
            model,
            "--seed",
            "5",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{o:?}");
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(&format!("# model={model} n=20 ")));
        let g = Graph::parse_edge_list(&text).unwrap();
        assert!(g.is_connected() && !g.is_bipartite());
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list(&[])).unwrap(), g);
        let again = run(&["generate", "--model", model, "--seed", "5"]);
        assert_eq!(stdout(&again), text);
        let a = run(&[
            "analyze",
            path.to_str().unwrap(),
            "--methods",
            "local-switching",
            "--seed",
            "1",
        ]);
        assert!(a.status.success());
    }
    let o = run(&["generate", "--model", "er", "--p", "1.0", "--n", "4", "--seed", "1"]);
    assert!(stdout(&o).contains("4 6\n"));
}

#[test]
fn experiment_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run_dir = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let o = run(&[
            "experiment",
            "--models",
            "er",
            "--instances",
            "10",
            "--seed",
            "1",
            "--threads",
            threads,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{o:?}");
        (
            std::fs::read(out.join("records.csv")).unwrap(),
            std::fs::read(out.join("summary.json")).unwrap(),
        )
    };
    let a = run_dir("a", "1");
    let b = run_dir("b", "3");
    assert_eq!(a, b);
    let csv = String::from_utf8(a.0).unwrap();
    assert_eq!(csv.lines().count(), 1 + 10 * 8);
    assert!(csv.starts_with("model,instance,params,seed,method,r_b_num,r_b_den,r_b,retained,runtime_ns\n"));
}

#[test]
fn experiment_config_file_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(
        &cfg,
        "models = ba\ninstances = 3\nrestarts = 4\ninclude-greedy = false\nseed = 11\nformat = csv,json,svg\n",
    )
    .unwrap();
    let out = dir.path().join("run");
    let o = run(&[
        "experiment",
        "--config",
        cfg.to_str().unwrap(),
        "--instances",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{o:?}");
    let csv = std::fs::read_to_string(out.join("records.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 5);
    for kind in ["histogram", "ecdf", "superiority", "similarity"] {
        let svg = std::fs::read_to_string(out.join(format!("ba_{kind}.svg"))).unwrap();
        roxmltree::Document::parse(&svg).unwrap();
    }
}

#[test]
fn seed_from_environment_and_entropy() {
    let f = fixture();
    let o = bin()
        .args(["analyze", f.to_str().unwrap(), "--methods", "eigen-a"])
        .env("BIPARTIFY_SEED", "42")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed=42"));
    assert!(!String::from_utf8_lossy(&o.stderr).contains("seed:"));
    let o = run(&["analyze", f.to_str().unwrap(), "--methods", "eigen-a"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("seed: "));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "x", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let bad = dir.path().join("bad.edges");
    std::fs::write(&bad, "3 2\n0 1\n").unwrap();
    assert_eq!(run(&["oracle", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "/nonexistent/file"]).status.code(), Some(2));
    let big = dir.path().join("big.edges");
    std::fs::write(&big, Graph::empty(30).to_edge_list(&[])).unwrap();
    assert_eq!(run(&["oracle", big.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        run(&["generate", "--model", "xx", "--seed", "1"]).status.code(),
        Some(1)
    );
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "instances = many\n").unwrap();
    assert_eq!(
        run(&["experiment", "--config", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // a three-vertex sweep can never produce a non-bipartite BA instance
    let o = run(&[
        "experiment",
        "--models",
        "ba",
        "--n",
        "3",
        "--instances",
        "1",
        "--seed",
        "1",
        "--include-greedy",
        "false",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3), "{o:?}");
}
