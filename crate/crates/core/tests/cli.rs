use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn horizon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horizon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("horizon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--output-format", "json"]);
    let o = horizon(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).expect("valid JSON")
}

#[test]
fn demos_exit_zero_with_valid_json() {
    for cmd in [&["hardy"][..], &["fr"], &["epr"], &["diagonal"], &["bell"]] {
        let v = json(cmd);
        assert!(v.is_object(), "{cmd:?}");
    }
}

#[test]
fn hardy_reports_p_h() {
    let v = json(&["hardy"]);
    assert_eq!(v["p_h_exact"], "1/12");
    assert_eq!(v["expansions"].as_array().unwrap().len(), 4);
    assert_eq!(v["demo"]["chain_verdict"]["valid"], false);
    assert_eq!(
        v["demo"]["chain_verdict"]["violation"]["reasons"][0],
        "incompatible-contexts"
    );
    let table = stdout(&horizon(&["hardy"]));
    assert!(table.contains("1/12"));
    let settings = json(&["hardy", "--settings", "x,z"]);
    assert_eq!(settings["outcome_table"][2]["probability_exact"], "0");
}

#[test]
fn fr_and_epr_findings() {
    let fr = json(&["fr"]);
    assert_eq!(
        fr["chain_verdict"]["violation"]["reasons"][0],
        "information-bound-exceeded"
    );
    assert_eq!(fr["counterexample"]["exact"], "1/12");
    let epr = json(&["epr"]);
    let flags: Vec<bool> = epr["counterfactuals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["supported"].as_bool().unwrap())
        .collect();
    assert_eq!(flags, [false, false, true]);
}

#[test]
fn bell_findings_exit_zero() {
    let ok = json(&["bell", "--correlations", "1,1,1,1"]);
    assert_eq!(ok["feasible"], true);
    assert_eq!(ok["witness"]["probabilities"][0], "1");
    let bad = json(&["bell", "--correlations", "1,1,1,-1"]);
    assert_eq!(bad["feasible"], false);
    assert_eq!(bad["chsh"]["exact"], "4");
    assert_eq!(bad["chsh"]["decimal"], 4.0);
    let model = scratch("model.json", &serde_json::to_string(&vec!["1/16"; 16]).unwrap());
    let m = json(&["bell", "--model", model.to_str().unwrap()]);
    assert_eq!(m["chsh"]["exact"], "0");
}

#[test]
fn toy_sim_is_byte_identical_per_seed() {
    let script = scratch(
        "script.json",
        r#"{"initial": "entangled", "measure": ["z_B", "z_A", "x_A", "x_AB", "z_B", "x_B", "z_AB"]}"#,
    );
    let args = [
        "toy-sim",
        "--seed",
        "7",
        "--script",
        script.to_str().unwrap(),
        "--output-format",
        "json",
    ];
    let (a, b) = (horizon(&args), horizon(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1]["forced"], true);
    assert_eq!(lines[1]["outcome"].as_i64(), lines[0]["outcome"].as_i64().map(|v| -v));

    let explicit = scratch(
        "explicit.json",
        r#"{"initial": {"system": "bipartite", "propositions": [{"observable": "x_A", "value": 1}, {"observable": "x_B", "value": -1, "condition": {"observable": "x_A", "value": 1}}]}, "measure": ["x_B"]}"#,
    );
    let o = horizon(&[
        "toy-sim",
        "--script",
        explicit.to_str().unwrap(),
        "--output-format",
        "json",
    ]);
    let rec: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(rec["forced"], true);
    assert_eq!(rec["outcome"], -1);
}

#[test]
fn validate_reads_chain_files() {
    let chain = r#"{
      "steps": [
        {"id": "i", "context": {"A": "x_A", "B": "z_B"},
         "premise": {"observable": "x_A", "value": -1},
         "conclusion": {"observable": "z_B", "value": -1, "condition": {"observable": "x_A", "value": -1}},
         "source": ["x", "z"]},
        {"id": "iii", "context": {"A": "z_A", "B": "x_B"},
         "premise": {"observable": "z_A", "value": 1},
         "conclusion": {"observable": "x_B", "value": 1, "condition": {"observable": "z_A", "value": 1}},
         "source": ["z", "x"]}
      ],
      "fused_conclusion": {"observable": "x_B", "value": 1, "condition": {"observable": "x_A", "value": -1}}
    }"#;
    let p = scratch("chain.json", chain);
    let v = json(&["validate", "--chain", p.to_str().unwrap()]);
    assert_eq!(v["chain_verdict"]["valid"], false);
    assert_eq!(
        v["chain_verdict"]["violation"]["steps"],
        serde_json::json!(["i", "iii"])
    );
    assert_eq!(v["steps"][0]["verdict"]["valid"], true);
}

#[test]
fn input_errors_exit_two() {
    let missing = horizon(&["validate", "--chain", "/definitely/not/here.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/definitely/not/here.json"));

    let broken = scratch("broken.json", "{\"steps\": [\n  {\"id\": 3}\n]}");
    let o = horizon(&["validate", "--chain", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let table = scratch("table.txt", "+ -\n- x\n");
    let o = horizon(&["diagonal", "--table", table.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(horizon(&["bell", "--correlations", "2,0,0,0"]).status.code(), Some(2));
    assert_eq!(horizon(&["hardy", "--settings", "q,z"]).status.code(), Some(2));
}

#[test]
fn diagonal_table_file() {
    let p = scratch("grid.txt", "# coin\n+ -\n- -\n");
    let v = json(&["diagonal", "--table", p.to_str().unwrap()]);
    assert_eq!(v["matching_row"], Value::Null);
    assert_eq!(v["diagonal_measurement"], serde_json::json!([-1, 1]));
}
