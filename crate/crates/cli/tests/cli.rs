use std::path::PathBuf;
use std::process::{Command, Output};

use fdsrank_core::graph::fixtures;
use fdsrank_core::{Digraph, Fds, Limits};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fdsrank"));
    c.env_remove("FDSRANK_MAX_FUNCS");
    c
}

fn graph_file(name: &str, d: &Digraph) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fdsrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, d.to_text()).unwrap();
    path
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn analyze_star() {
    let f = graph_file("star3.txt", &fixtures::star3());
    let doc = json(&run(bin().args(["analyze"]).arg(&f).args(["--q", "2"])));
    assert_eq!(doc["absolute_minrank"]["value"]["lower"], 4);
    assert_eq!(doc["absolute_minrank"]["value"]["upper"], 4);
    assert_eq!(doc["minrank"]["value"]["value"], 5);
    assert_eq!(doc["conjunctive_rank"]["value"], 8);
    assert_eq!(doc["enumeration"]["strict"]["value"]["function_count"], 2000);
}

#[test]
fn analyze_fig1() {
    let f = graph_file("fig1.txt", &fixtures::fig1());
    let doc = json(&run(bin().args(["analyze"]).arg(&f)));
    let c = &doc["canonical"];
    assert_eq!(c["l"]["value"], 4);
    assert_eq!(c["l_refined"]["value"], 6);
    assert_eq!(c["u"]["value"], 8);
    assert_eq!(c["tightness"]["value"]["verdict"], "not-tight");
    assert_eq!(doc["conjunctive_rank"]["value"], 7);
}

#[test]
fn analyze_empty_graph() {
    let f = graph_file("e3.txt", &fixtures::e3());
    let doc = json(&run(bin().args(["analyze"]).arg(&f)));
    assert_eq!(doc["classification"]["verdict"], "one");
    for family in ["strict", "non_strict"] {
        let s = &doc["enumeration"][family]["value"];
        assert_eq!(s["rank"]["min"], 1);
        assert_eq!(s["rank"]["max"], 1);
    }
}

#[test]
fn analyze_is_byte_stable() {
    let f = graph_file("k3.txt", &fixtures::k3());
    let a = run(bin().args(["analyze"]).arg(&f).env("RAYON_NUM_THREADS", "1"));
    let b = run(bin().args(["analyze"]).arg(&f).env("RAYON_NUM_THREADS", "3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_marks_skipped_sections() {
    let f = graph_file("star3-small.txt", &fixtures::star3());
    let doc = json(&run(bin().args(["analyze", "--max-functions", "100"]).arg(&f)));
    let s = &doc["enumeration"]["strict"];
    assert_eq!(s["status"], "skipped(size)");
    assert!(s["reason"].as_str().unwrap().contains("2000"));
    assert!(s.get("value").is_none());
    assert_eq!(doc["guards"]["max_functions"], 100);
}

#[test]
fn parse_error_exits_2_with_line() {
    let dir = std::env::temp_dir().join(format!("fdsrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.txt");
    std::fs::write(&path, "n 2\n1 2\n2 9\n").unwrap();
    let out = run(bin().args(["enum"]).arg(&path));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = run(bin().args(["enum", "missing-file.txt"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guard_refusal_exits_3_with_size() {
    let f = graph_file("star3-guard.txt", &fixtures::star3());
    let out = run(bin().args(["enum", "--strict"]).arg(&f).env("FDSRANK_MAX_FUNCS", "1999"));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2000"));
    let out = run(bin().args(["enum", "--strict", "--max-functions", "2000"]).arg(&f));
    assert!(out.status.success());
}

#[test]
fn bad_alphabet_rejected() {
    let f = graph_file("c3.txt", &fixtures::c3());
    let out = run(bin().args(["enum", "--q", "1"]).arg(&f));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enum_table_and_json_agree() {
    let f = graph_file("c3-enum.txt", &fixtures::c3());
    let doc = json(&run(bin().args(["enum", "--strict"]).arg(&f)));
    assert_eq!(doc["function_count"], 8);
    assert_eq!(doc["fixed_points"]["average"], "1");
    let out = run(bin().args(["enum", "--strict", "--format", "table"]).arg(&f));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("systems=8"));
}

#[test]
fn bounds_report() {
    let f = graph_file("k3-bounds.txt", &fixtures::k3());
    let doc = json(&run(bin().args(["bounds", "--q", "2"]).arg(&f)));
    assert_eq!(doc["best_lower"], 4);
    assert_eq!(doc["best_upper"], 4);
    assert_eq!(doc["consistent"], true);
}

#[test]
fn witnesses_written_and_valid() {
    let dir = std::env::temp_dir().join(format!("fdsrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let lim = Limits::default();

    let out_path = dir.join("star5.fds");
    assert!(run(bin().args(["witness", "star", "5", "-o"]).arg(&out_path)).status.success());
    let f = Fds::parse(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(f.rank(&lim).unwrap(), 11);

    let g = graph_file("fig1-w.txt", &fixtures::fig1());
    let out = run(bin().args(["witness", "conjunctive"]).arg(&g));
    let f = Fds::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(f.interaction_graph(), fixtures::fig1());
    assert_eq!(f.rank(&lim).unwrap(), 7);

    let out = run(bin().args(["witness", "star", "4"]));
    assert_eq!(out.status.code(), Some(1));
    let c3 = graph_file("c3-w.txt", &fixtures::c3());
    let out = run(bin().args(["witness", "nilpotent", "--q", "2"]).arg(&c3));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn quick_verify_passes() {
    let out = run(bin().args(["verify", "--quick"]));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 14);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.starts_with("SKIP")));
}
