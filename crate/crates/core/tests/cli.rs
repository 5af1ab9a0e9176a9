use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exel-sgpd")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", &data("g1.json")]).status.code(), Some(0));
    let broken = run(&["validate", &data("broken_inverse.json")]);
    assert_eq!(broken.status.code(), Some(1));
    assert!(json(&broken)["violation"].as_str().unwrap().contains("inverse"));
    assert_eq!(run(&["validate", &data("missing.json")]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"elements\": [").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["validate", &data("g1.json"), "--no-such-flag"]).status.code(), Some(2));
}

#[test]
fn enumerate_sg_rows() {
    let out = run(&["enumerate-sg", &data("g1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["size"], 6);
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);

    let out = run(&["enumerate-sg", &data("z2.json"), "--oracle-maxlen", "6", "--certify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["size"], 3);
    assert_eq!(v["oracle"]["agrees"], true);

    assert_eq!(json(&run(&["enumerate-sg", &data("trivial.json")]))["size"], 1);
    assert_eq!(run(&["enumerate-sg", &data("g1.json"), "--max-elements", "3"]).status.code(), Some(2));
}

#[test]
fn actions_roundtrip_and_tampering() {
    let out = run(&["actions", &data("z2.json"), "--action", &data("z2_action.json"), "--roundtrip"]);
    assert_eq!(out.status.code(), Some(0));
    let subjects: Vec<String> =
        json(&out).as_array().unwrap().iter().map(|r| r["subject"].as_str().unwrap().to_string()).collect();
    assert!(subjects.contains(&"round trip".to_string()));

    let out = run(&["actions", &data("z3.json"), "--action", &data("z3_action_tampered.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let pa2 = v[0]["checks"].as_array().unwrap().iter().find(|c| c["axiom"] == "PA2").unwrap();
    assert!(pa2["witnesses"][0].as_str().unwrap().starts_with("(a, a)"));
}

#[test]
fn action_family_reports_the_soundness_gap() {
    let out = run(&["actions", &data("z2.json"), "--family", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid_partial"], 10);
    let failing: Vec<&str> = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["failures"] != 0)
        .map(|c| c["axiom"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["characterization ⇒ partial action"]);
}

#[test]
fn crossed_reports() {
    let out = run(&["crossed", &data("g1.json"), "--action", &data("g1_action.json")]);
    assert_eq!(out.status.code(), Some(0));
    let dims = &json(&out)["isomorphism"]["dims"];
    assert_eq!(dims["crossed_product"], dims["quotient"]);
    assert_eq!(dims["crossed_product"], dims["sum_of_ideals"]);

    let out = run(&["crossed", &data("z2.json"), "--projection", "--trials", "50", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dim"], 3);
}

#[test]
fn reps_triangle() {
    let out = run(&["reps", &data("z2.json"), "--rep", &data("z2_rep.json"), "--triangle"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["reps", &data("g1.json"), "--action", &data("g1_action.json"), "--triangle"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["reps", &data("z2.json"), "--rep", &data("z2_rep_broken.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["reps", &data("z2.json"), "--rep", &data("g1_rep.json")]).status.code(), Some(2));
}

#[test]
fn export_table_csv() {
    let out = run(&["export-table", &data("g1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.split(',').count() == 7));
    assert!(rows.contains(&"[g],[g],[g],,,,ε_g[f]"));
}

#[test]
fn output_is_deterministic_and_threads_are_capped() {
    let args = ["crossed", &data("z2.json"), "--action", &data("z2_action.json")];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_exel-sgpd")).args(args).env("EXEL_SGPD_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_exel-sgpd")).args(args).env("EXEL_SGPD_THREADS", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["validate", &data("z2.json"), "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().contains("\"passed\": true"));
}
