use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hopf_twist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopf-twist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopf-twist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn instanton_with_left_twist_verifies() {
    let out = hopf_twist(&["verify", "--instance", "instanton", "--sigma", "gamma_theta"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("all suites passed"));
}

#[test]
fn finite_table_twists_verify() {
    for args in [
        &["verify", "--instance", "finite_group_galois", "--param", "n=2", "--gamma", "cyclic_table_1"][..],
        &["verify", "--instance", "finite_function_galois", "--gamma", "sign_table", "--sigma", "sign_table"][..],
    ] {
        let out = hopf_twist(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn corrupted_cocycle_fails_with_triple() {
    let out = hopf_twist(&[
        "verify",
        "--instance",
        "finite_function_galois",
        "--gamma",
        "corrupted_table",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["passed"], false);
    let cases: Vec<String> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["reports"].as_array().unwrap().iter())
        .flat_map(|r| r["witnesses"].as_array().unwrap().iter())
        .map(|w| w["case"].as_str().unwrap().to_string())
        .collect();
    assert!(cases.iter().any(|c| c.contains("triple (")), "{cases:?}");
}

#[test]
fn results_are_deterministic() {
    let args = [
        "report",
        "--instance",
        "trivial_bundle",
        "--param",
        "n=3",
        "--gamma",
        "cyclic_table_1",
        "--sigma",
        "sign_table",
        "--seed",
        "17",
    ];
    let a = json(&hopf_twist(&args));
    let b = json(&hopf_twist(&args));
    assert_eq!(a["format"], "hopf-twist-report/1");
    assert_eq!(a["config"]["seed"], 17);
    assert_eq!(
        serde_json::to_string(&a["results"]).unwrap(),
        serde_json::to_string(&b["results"]).unwrap()
    );
}

#[test]
fn saved_report_round_trips() {
    let path = scratch("report.json");
    let p = path.to_str().unwrap();
    let out = hopf_twist(&["verify", "--instance", "finite_group_galois", "--suite", "cocycle", "--gamma", "cyclic_table_1", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let again = json(&hopf_twist(&["report", "--from", p]));
    assert_eq!(saved, again);
}

#[test]
fn list_names_the_instanton() {
    let out = hopf_twist(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).lines().any(|l| l.starts_with("instanton ")));
    let entries = json(&hopf_twist(&["list", "--format", "json"]));
    assert!(entries.as_array().unwrap().iter().any(|e| e["name"] == "instanton"));
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["verify", "--instance", "no_such_thing"][..],
        &["verify", "--instance", "finite_group_galois", "--param", "k=3"][..],
        &["verify", "--instance", "finite_group_galois", "--gamma", "no_such_cocycle"][..],
        &["verify", "--instance", "finite_group_galois", "--max-degree", "0"][..],
        &["verify", "--instance", "finite_group_galois", "--suite", "bogus"][..],
        &["build", "--instance", "su2_hopf", "--out", "/nonexistent/x.json"][..],
    ] {
        assert_eq!(hopf_twist(args).status.code(), Some(2), "{args:?}");
    }
}

fn relations(args: &[&str]) -> Vec<(String, String, String)> {
    let out = hopf_twist(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let s = |k: &str| r[k].as_str().unwrap().to_string();
            (s("left"), s("right"), s("factor"))
        })
        .collect()
}

#[test]
fn twist_tables() {
    let torus = relations(&["twist", "--instance", "torus_galois", "--gamma", "gamma_theta", "--format", "json"]);
    assert!(torus.contains(&("t1".into(), "t2".into(), "q^-2".into())), "{torus:?}");
    let plain = relations(&["twist", "--instance", "torus_galois", "--gamma", "trivial", "--format", "json"]);
    assert!(plain.iter().all(|(_, _, f)| f == "1"));
    let sphere = relations(&["twist", "--instance", "instanton", "--sigma", "gamma_theta", "--format", "json"]);
    assert!(sphere.contains(&("z1".into(), "z3".into(), "q^2".into())), "{sphere:?}");
}

#[test]
fn built_instance_file_verifies() {
    let path = scratch("torus.json");
    let p = path.to_str().unwrap();
    assert_eq!(hopf_twist(&["build", "--instance", "torus_galois", "--out", p]).status.code(), Some(0));
    let out = hopf_twist(&["verify", "--instance", p, "--gamma", "gamma_theta", "--max-degree", "2", "--samples", "40"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn instanton_coinvariants_to_degree_two() {
    let out = hopf_twist(&["coinv", "--instance", "instanton", "--max-degree", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dimension"], 6);
}
