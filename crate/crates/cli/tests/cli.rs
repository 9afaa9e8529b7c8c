use std::process::{Command, Output};

use serde_json::Value;

fn symcay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcay"))
        .args(args)
        .env_remove("SYMCAY_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn gen_dot_has_one_node_per_permutation() {
    let o = symcay(&["gen", "mb:4", "--format", "dot"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.matches("[label=").count(), 24);
    assert_eq!(text.matches(" -- ").count(), 48);
}

#[test]
fn gen_edgelist_header_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ug5.txt");
    let o = symcay(&[
        "gen",
        "--spec",
        "ug:5:c=4",
        "--format",
        "edgelist",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("n=5 order=120 degree=5"));
    assert_eq!(text.lines().count(), 1 + 300);
}

#[test]
fn gen_is_byte_deterministic() {
    let a = stdout(&symcay(&["gen", "mb:4", "--format", "graph6"]));
    let b = stdout(&symcay(&["gen", "mb:4", "--format", "graph6"]));
    assert_eq!(a, b);
    assert_eq!(a, "WpO[ACACGA?bG?CO_CQ?`?AOG?WOC?K?C?Ga_@?G@?QC??b\n");
}

#[test]
fn validation_and_usage_errors_exit_two_and_name_the_token() {
    let o = symcay(&["gen", "edges:1-2,2-3,1-3 n=3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("edges:1-2,2-3,1-3 n=3"));
    assert!(stderr(&o).contains("triangle"));

    let o = symcay(&["gen", "mb:x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`x`"));

    let o = symcay(&["gen", "mb:4", "--format", "png"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--format"));

    let o = symcay(&[
        "cut-search",
        "mb:4",
        "--kind",
        "good-neighbor:x",
        "--max-size",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--kind"));

    let o = symcay(&["verify", "mb:4", "--budget=0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--budget"));

    let o = symcay(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn capacity_errors_exit_three() {
    let o = symcay(&["info", "mb:9"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("mb:9"));
    // exhaustive search needs the bitmask engine
    let o = symcay(&["cut-search", "mb:6", "--max-size", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("--mode exhaustive"));
}

#[test]
fn connectivity_values() {
    for (spec, kappa) in [("mb:4", 4), ("bubble:4", 3), ("star:4", 3), ("mb:3", 3)] {
        let o = symcay(&["connectivity", spec]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(
            text.starts_with(&format!("kappa={kappa}\n")),
            "{spec}: {text}"
        );
    }
}

#[test]
fn connectivity_writes_a_vertex_cut_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cut.txt");
    let o = symcay(&["connectivity", "mb:4", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("kind=vertex-cut\nsize=4\ngraph=mb:4\n"));
}

#[test]
fn cut_search_exhaustive_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let o = symcay(&[
        "cut-search",
        "mb:4",
        "--kind",
        "cyclic",
        "--max-size",
        "8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout(&o), file);
    let lines: Vec<&str> = file.lines().collect();
    assert_eq!(&lines[..3], ["kind=cyclic-cut", "size=8", "graph=mb:4"]);
    assert_eq!(lines.len(), 11);

    let missing = dir.path().join("none.txt");
    let o = symcay(&[
        "cut-search",
        "mb:4",
        "--kind",
        "cyclic",
        "--max-size",
        "7",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "none\n");
    assert!(!missing.exists());
}

#[test]
fn cut_search_random_finds_the_upper_bound_on_ug5() {
    let o = symcay(&[
        "cut-search",
        "ug:5:c=4",
        "--kind",
        "cyclic",
        "--max-size",
        "12",
        "--mode",
        "random",
        "--trials",
        "2000",
        "--workers",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("size=12\n"));
}

#[test]
fn verify_mb4_passes_and_report_renders() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = symcay(&[
        "verify",
        "mb:4",
        "all",
        "--trials",
        "2000",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("gating-failures=0"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["body"]["checks"].as_array().unwrap().len(), 15);
    assert!(v["body"]["tool"].as_str().unwrap().starts_with("symcay "));

    let o = symcay(&["report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cyclic-connectivity"));
}

#[test]
fn verify_single_check() {
    let o = symcay(&[
        "verify", "--spec", "mb:4", "--checks", "cn-bound", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["body"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["id"], "cn-bound");
    assert_eq!(checks[0]["verdict"], "PROVED-EXHAUSTIVE");
}

#[test]
fn corrupted_fixture_exits_one() {
    for fixture in ["shared-out-neighbor", "common-neighbors"] {
        let o = symcay(&["verify", "mb:4", "--corrupt", fixture, "--trials", "2000"]);
        assert_eq!(o.status.code(), Some(1), "{fixture}");
        assert!(stdout(&o).contains("FAIL"));
    }
    let o = symcay(&["verify", "mb:4", "--corrupt", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--corrupt `nope`"));
}

#[test]
fn report_body_is_independent_of_workers() {
    let run = |workers: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_symcay"))
            .args([
                "verify", "mb:4", "all", "--trials", "3000", "--format", "json",
            ])
            .env("SYMCAY_WORKERS", workers)
            .output()
            .unwrap();
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(
            v["timing"]["workers"].as_u64().unwrap().to_string(),
            workers
        );
        serde_json::to_string(&v["body"]).unwrap()
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn zero_workers_is_a_usage_error() {
    let o = symcay(&["verify", "mb:4", "--workers", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--workers"));
}

#[test]
fn report_rejects_non_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, "{\"schema\": 7}").unwrap();
    let o = symcay(&["report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x.json"));
}

#[test]
fn info_json() {
    let o = symcay(&["info", "ug:5:c=4", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 120);
    assert_eq!(v["degree"], 5);
    assert_eq!(v["girth"], 4);
    assert_eq!(v["class"], "unicyclic-triangle-free");
}
