use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagsphere"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(dir: &Path, args: &[&str]) -> Value {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn fails_with(dir: &Path, args: &[&str], code: i32, needle: &str) {
    let out = run(dir, args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(needle), "{args:?}: {err}");
}

#[test]
fn cyclic_command() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(run(d, &["cyclic", "--n", "6", "--out", "c6.txt"])
        .status
        .success());
    let text = std::fs::read_to_string(d.join("c6.txt")).unwrap();
    let facet_lines = text
        .lines()
        .take_while(|l| *l != "tags:")
        .filter(|l| !l.starts_with('#'))
        .count();
    assert_eq!(facet_lines, 9);
    fails_with(d, &["cyclic", "--n", "5"], 1, "TooSmall");

    let v = ok_json(d, &["verify", "--in", "c6.txt", "--seed", "0"]);
    assert_eq!(v["is_flag"], false);
    assert_eq!(v["empty_triangle_count"], 2);
    assert_eq!(v["chromatic_upper"], Value::Null);

    run(d, &["cyclic", "--n", "8", "--out", "c8.txt"]);
    let v = ok_json(d, &["verify", "--in", "c8.txt", "--seed", "0"]);
    let checks = v["manifold_checks"].as_object().unwrap();
    assert!(checks.values().all(|c| c == true));
}

#[test]
fn flagify_verify_certify_color() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["graph", "mycielski", "--k", "4", "--out", "g.txt"]);
    let report = ok_json(
        d,
        &[
            "flagify", "--graph", "g.txt", "--n", "11", "--out", "x.txt", "--trace", "t.txt",
        ],
    );
    assert!(report["final_vertex_count"].as_u64().unwrap() <= 231);
    assert_eq!(report["bound"], 231);

    let v = ok_json(
        d,
        &["verify", "--in", "x.txt", "--graph", "g.txt", "--seed", "1"],
    );
    assert_eq!(v["is_flag"], true);
    assert_eq!(v["euler"], 0);
    assert_eq!(v["empty_triangle_count"], 0);
    assert_eq!(v["chromatic_lower"], 4);
    assert!(v["chromatic_lower"].as_u64() <= v["chromatic_upper"].as_u64());
    assert!(v["alpha_exact"].as_u64() >= v["alpha_lower"].as_u64());

    let c = ok_json(
        d,
        &["certify", "--in", "x.txt", "--graph", "g.txt", "--k", "4"],
    );
    assert_eq!(c["k"], 4);
    assert_eq!(c["witness_type"], "exhaustive_search");
    for field in ["graph", "k", "solver_nodes", "witness_type"] {
        assert!(c.get(field).is_some(), "missing {field}");
    }
    fails_with(
        d,
        &["certify", "--in", "x.txt", "--graph", "g.txt", "--k", "5"],
        1,
        "CertificationFailed",
    );

    let col = ok_json(
        d,
        &[
            "color",
            "--in",
            "x.txt",
            "--strategy",
            "five",
            "--out",
            "col.txt",
        ],
    );
    assert!(col["colors"].as_u64() <= col["bound"].as_u64());
    let lines = std::fs::read_to_string(d.join("col.txt")).unwrap();
    assert_eq!(
        lines.lines().count() as u64,
        report["final_vertex_count"].as_u64().unwrap()
    );
}

#[test]
fn replay_command() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["graph", "cycle", "--n", "5", "--out", "c5.txt"]);
    run(
        d,
        &[
            "flagify", "--graph", "c5.txt", "--n", "6", "--out", "x.txt", "--trace", "t.txt",
        ],
    );
    run(d, &["cyclic", "--n", "6", "--out", "base.txt"]);
    assert!(run(
        d,
        &["replay", "--in", "base.txt", "--trace", "t.txt", "--out", "y.txt"]
    )
    .status
    .success());
    assert_eq!(
        std::fs::read(d.join("x.txt")).unwrap(),
        std::fs::read(d.join("y.txt")).unwrap()
    );

    std::fs::write(d.join("empty.txt"), "").unwrap();
    let out = run(d, &["replay", "--in", "base.txt", "--trace", "empty.txt"]);
    assert_eq!(out.stdout, std::fs::read(d.join("base.txt")).unwrap());

    std::fs::write(d.join("bad.txt"), "subdiv 0 1 -> 6\nsubdiv 0 1 -> 7\n").unwrap();
    fails_with(
        d,
        &["replay", "--in", "base.txt", "--trace", "bad.txt"],
        1,
        "NotAnEdge",
    );
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("tri.txt"), "3 3\n0 1\n1 2\n0 2\n").unwrap();
    fails_with(
        d,
        &["flagify", "--graph", "tri.txt", "--n", "6"],
        1,
        "NotTriangleFree",
    );
    std::fs::write(d.join("mixed.txt"), "0 1 2 3\n4 5 6\n").unwrap();
    fails_with(
        d,
        &["verify", "--in", "mixed.txt", "--seed", "0"],
        2,
        "mixed",
    );
    fails_with(
        d,
        &["verify", "--in", "missing.txt", "--seed", "0"],
        2,
        "missing.txt",
    );
    fails_with(d, &["graph", "process", "--n", "10"], 2, "--seed");
    fails_with(
        d,
        &["random-clique", "--n", "100", "--alpha", "0.55"],
        2,
        "--seed",
    );
    fails_with(
        d,
        &[
            "random-clique",
            "--n",
            "100",
            "--alpha",
            "0.3",
            "--seed",
            "1",
        ],
        1,
        "InvalidAlpha",
    );
    std::fs::write(d.join("cfg.json"), r#"{"n": 100, "alpha": 0.55}"#).unwrap();
    fails_with(d, &["random-clique", "--in", "cfg.json"], 2, "seed");
}

#[test]
fn seeded_commands_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("cfg.json"),
        r#"{"n": 300, "alpha": 0.55, "d": 3, "seed": 7}"#,
    )
    .unwrap();
    let runs: Vec<Output> = (0..2)
        .map(|_| run(d, &["random-clique", "--in", "cfg.json"]))
        .collect();
    assert_eq!(runs[0].stdout, runs[1].stdout);
    let flags = run(
        d,
        &[
            "random-clique",
            "--n",
            "300",
            "--alpha",
            "0.55",
            "--seed",
            "7",
        ],
    );
    assert_eq!(flags.stdout, runs[0].stdout);

    for name in ["a.txt", "b.txt"] {
        run(
            d,
            &[
                "graph", "process", "--n", "14", "--seed", "3", "--out", name,
            ],
        );
    }
    assert_eq!(
        std::fs::read(d.join("a.txt")).unwrap(),
        std::fs::read(d.join("b.txt")).unwrap()
    );
    run(
        d,
        &["flagify", "--graph", "a.txt", "--n", "14", "--out", "x.txt"],
    );
    let verify: Vec<Output> = (0..2)
        .map(|_| run(d, &["verify", "--in", "x.txt", "--seed", "5"]))
        .collect();
    assert!(verify[0].status.success());
    assert_eq!(verify[0].stdout, verify[1].stdout);
}
