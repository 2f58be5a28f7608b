use std::process::{Command, Output};

fn enrich(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enrich"))
        .args(args)
        .env_remove("ENRICH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn enriched_list_on_figure1_contains_the_worked_examples() {
    let o = enrich(&["--corpus", "figure1", "enriched", "list", "--format", "text"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for p in ["e1 < e2, e1 < e3, e3 < e4", "e1 < e2, e1 < e4, e3 < e1", "e1~e3 < e2, e1~e3 < e4"] {
        assert!(out.lines().any(|l| l.ends_with(p)), "{p} missing from\n{out}");
    }
}

#[test]
fn star_build_on_the_triangle() {
    let o = enrich(&["--corpus", "cycle3", "fan", "build", "--via-star", "--check-equal", "--format", "text"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("equal: true"));
    assert!(out.contains("maximal cones: 6"));
    let o = enrich(&["--corpus", "cycle3", "fan", "build", "--via-star", "--check-equal"]);
    let v = json(&o);
    assert_eq!(v["equal"], true);
    assert_eq!(v["maximal_cone_count"], 6);
}

#[test]
fn quotient_fan_of_theta_is_projective_plane() {
    let v = json(&enrich(&["--corpus", "theta3", "fan", "build", "--quotient"]));
    assert_eq!(v["lattice_rank"], 2);
    assert_eq!(v["rays"].as_array().unwrap().len(), 3);
    assert_eq!(v["complete"], true);
}

#[test]
fn moduli_cells_genus_two() {
    let v = json(&enrich(&["moduli", "cells", "-g", "2"]));
    assert_eq!(v["cell_count"], 9);
    assert_eq!(v["maximal"].as_array().unwrap().len(), 2);
    let dot = stdout(&enrich(&["moduli", "cells", "-g", "2", "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
}

#[test]
fn graph_info_from_inline_text() {
    let v = json(&enrich(&["--inline", "vertices: u v:1; a: u v; l: u u", "graph", "info"]));
    assert_eq!(v["genus"], 2);
    assert_eq!(v["edges"], 2);
    assert_eq!(v["stable"], true);
}

#[test]
fn graph_from_file() {
    let dir = std::env::temp_dir().join(format!("enrich-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta.txt");
    std::fs::write(&path, "a: u v\nb: u v\nc: u v\n").unwrap();
    let v = json(&enrich(&["--input", path.to_str().unwrap(), "enriched", "list"]));
    assert_eq!(v["count"], 7);
    assert_eq!(v["generic"], 3);
}

#[test]
fn enriched_check_exit_codes() {
    let ok = enrich(&["--corpus", "cycle3", "enriched", "check", "--preorder", "a < b < c"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["enriched"], true);
    let bad = enrich(&["--corpus", "figure1", "enriched", "check", "--preorder", ""]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["enriched"], false);
}

#[test]
fn parse_errors_exit_two() {
    let o = enrich(&["--inline", "a: u", "graph", "info"]);
    assert_eq!(o.status.code(), Some(2));
    let o = enrich(&["--corpus", "nonexistent", "graph", "info"]);
    assert_eq!(o.status.code(), Some(2));
    let o = enrich(&["graph", "info"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn guards_exit_three() {
    let o = enrich(&["--corpus", "cycle4", "--max-edges", "3", "enriched", "list"]);
    assert_eq!(o.status.code(), Some(3));
    let o = enrich(&["moduli", "cells", "-g", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn toric_outputs() {
    let v = json(&enrich(&["--corpus", "cycle3", "toric", "equations"]));
    assert_eq!(v["bonds"].as_array().unwrap().len(), 3);
    assert!(!v["relations"].as_array().unwrap().is_empty());
    let v = json(&enrich(&["--corpus", "cycle3", "toric", "schedule"]));
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["stages"][0]["centers"].as_array().unwrap().len(), 3);
    let ideal = stdout(&enrich(&["--corpus", "figure1", "toric", "equations", "--ideal"]));
    assert!(ideal.contains("ideal("));
    let o = enrich(&["--corpus", "dumbbell", "toric", "equations"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fan_verify_is_deterministic_and_seeded() {
    let a = enrich(&["--corpus", "figure1", "--seed", "5", "fan", "verify", "--points", "50"]);
    let b = enrich(&["--corpus", "figure1", "--seed", "5", "fan", "verify", "--points", "50"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 5);
    let c = Command::new(env!("CARGO_BIN_EXE_enrich"))
        .args(["--corpus", "figure1", "--seed", "5", "fan", "verify", "--points", "10"])
        .env("ENRICH_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(json(&c)["seed"], 9);
}

#[test]
fn verify_all_passes() {
    let o = enrich(&["verify", "all", "--format", "text"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.contains("0 failed"));
}
