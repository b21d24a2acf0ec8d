use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.alg"))
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semibrick")).args(args).output().unwrap()
}

fn text(args: &[&str]) -> (i32, String) {
    let out = run(args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    let out = run(&v);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_q1() {
    let (code, out) = text(&["classify", &fixture("q1")]);
    assert_eq!(code, 0);
    assert!(out.contains("is gentle true") && out.contains("max vertex degree 3"));
    let j = json(&["classify", &fixture("q1")]);
    assert_eq!(j["is_gentle"], true);
    assert_eq!(j["max_vertex_degree"], 3);
}

#[test]
fn catalogs() {
    let (_, out) = text(&["bricks", &fixture("a2")]);
    assert!(out.ends_with("3 bricks\n"));
    assert_eq!(json(&["bricks", &fixture("a2")])["count"], 3);
    let (_, out) = text(&["strings", &fixture("nakayama3")]);
    assert!(out.contains(" ~b.c ") || out.contains(" ~c.b "));
}

#[test]
fn check_pair_q1() {
    let (code, out) = text(&["check-pair", &fixture("q1"), "e1, g4 / g1.g2"]);
    assert_eq!(code, 0);
    assert!(out.contains("completable no"));
    assert!(out.contains("mu+ at e1: e1, g4 / g1.g2 -> g4 / e1, g2"));
    assert!(out.contains("approximation g2 -> g4 at g4 is neither mono nor epi"));
    let j = json(&["check-pair", &fixture("q1"), "e1, g4 / g1.g2"]);
    assert_eq!(j["completable"], false);
    assert_eq!(j["obstruction"]["brick"], "g2");
    assert_eq!(j["obstruction"]["approximation"], "g4");
    let (_, out) = text(&["check-pair", &fixture("q1"), "e1 / -"]);
    assert!(out.contains("completable yes"));
}

#[test]
fn check_pair_two_cycles() {
    let (_, out) = text(&["check-pair", &fixture("q2cycle"), "e4, b / g1.g2.g3"]);
    assert!(out.contains("completable no"));
}

#[test]
fn pairwise_and_collections() {
    let (_, out) = text(&["pairwise", &fixture("a3")]);
    assert!(out.starts_with("property holds"));
    let j = json(&["pairwise", &fixture("q1")]);
    assert_eq!(j["holds"], false);
    assert_eq!(j["witnesses"][0], "e1, g4 / g1.g2");
    let (code, out) = text(&["smc", &fixture("a2"), "--via", "both"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("5 collections via lattice and mutation, methods agree\n"));
}

#[test]
fn hall_q1() {
    let (code, out) = text(&["hall", &fixture("q1"), "--degree", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("all 50 polygon relations verified"));
    let j = json(&["hall", &fixture("q1"), "--degree", "6", "--primes", "2"]);
    assert_eq!(j["failures"], 0);
    assert_eq!(j["held_out_primes"], 2);
}

#[test]
fn tors_dot_and_group() {
    let dot = std::env::temp_dir().join(format!("semibrick-{}.dot", std::process::id()));
    let (code, out) = text(&["tors", &fixture("a2"), "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.ends_with("5 torsion classes, 5 arrows\n"));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph torsion {"));
    std::fs::remove_file(dot).unwrap();
    let (_, out) = text(&["group", &fixture("a2")]);
    assert!(out.contains("rel X0 X1 = X1 X2 X0"));
}

#[test]
fn arc_validation() {
    let (code, out) = text(&["arc", &fixture("nakayama3"), "--validate"]);
    assert_eq!(code, 0);
    assert!(out.contains("arc 3 2 len 2 brick c\n"));
    assert!(out.contains("0 mismatches"));
    assert_eq!(json(&["arc", &fixture("nakayama5"), "--validate"])["validation"]["passed"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["arc", &fixture("q1")]).status.code(), Some(1));
    assert_eq!(run(&["bricks", "/nonexistent.alg"]).status.code(), Some(1));
    assert_eq!(run(&["bricks", &fixture("a2"), "--field", "4"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["check-pair", &fixture("a2"), "e1 / e1"]).status.code(), Some(1));
    assert_eq!(run(&["bricks", &fixture("a2"), "--cap-bricks", "2"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["tors", "q2cycle"], vec!["pairwise", "q2cycle"], vec!["group", "nakayama3"]] {
        let path = fixture(args[1]);
        let a = run(&[args[0], &path]);
        let b = run(&[args[0], &path]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn json_keys_are_sorted() {
    let out = run(&["classify", &fixture("a3"), "--json"]);
    let s = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<&str> = s.lines().filter_map(|l| l.trim().strip_prefix('"')?.split('"').next()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn text_and_json_agree() {
    for name in ["a2", "q1", "nakayama3"] {
        let (_, out) = text(&["tors", &fixture(name)]);
        let j = json(&["tors", &fixture(name)]);
        assert_eq!(out.lines().filter(|l| l.contains(" -> ")).count(), j["arrows"].as_array().unwrap().len());
        let (_, out) = text(&["smc", &fixture(name)]);
        let j = json(&["smc", &fixture(name)]);
        for c in j["collections"].as_array().unwrap() {
            assert!(out.lines().any(|l| l == c.as_str().unwrap()));
        }
        let (_, out) = text(&["bricks", &fixture(name)]);
        let j = json(&["bricks", &fixture(name)]);
        for b in j["bricks"].as_array().unwrap() {
            assert!(out.contains(&format!("{} {} ", b["id"], b["word"].as_str().unwrap())));
        }
    }
}
