use std::path::Path;
use std::process::{Command, Output};

fn locgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_family(dir: &Path, file: &str, family: &[&str]) -> String {
    let path = dir.join(file);
    let p = path.to_str().unwrap().to_string();
    let mut args = vec!["gen"];
    args.extend_from_slice(family);
    if file.ends_with(".json") {
        args.extend(["--format", "json"]);
    }
    args.extend(["--out", &p]);
    assert!(locgame(&args).status.success());
    p
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

#[test]
fn gen_rotation_edge_list() {
    let o = locgame(&["gen", "rotation", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "5");
    assert_eq!(lines.len(), 1 + 10);
    assert!(lines.contains(&"4 0") && lines.contains(&"4 1"));
}

#[test]
fn gen_paley_has_21_arcs() {
    let o = locgame(&["gen", "paley", "7", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["n"], 7);
    assert_eq!(v["arcs"].as_array().unwrap().len(), 21);
}

#[test]
fn gen_random_is_reproducible() {
    let a = stdout(&locgame(&["gen", "random", "10", "0.5", "--seed", "1"]));
    let b = stdout(&locgame(&["gen", "random", "10", "0.5", "--seed", "1"]));
    let c = stdout(&locgame(&["gen", "random", "10", "0.5", "--seed", "2"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(a.lines().count(), 1 + 45);
}

#[test]
fn bad_family_fails() {
    let o = locgame(&["gen", "paley", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn bounds_reports() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write_family(dir.path(), "c3.txt", &["rotation", "1"]);
    let v = json(&locgame(&["bounds", &c3]));
    assert_eq!((v["beta"].as_u64(), v["zeta"].as_u64(), v["consistent"].as_bool()), (Some(1), Some(1), Some(true)));

    let t5 = write_family(dir.path(), "t5.json", &["rotation", "2"]);
    let o = locgame(&["bounds", &t5]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["zeta"], 2);
    assert!(v["beta"].as_u64().unwrap() >= 2);

    let t6 = write_family(dir.path(), "t6.txt", &["transitive", "6"]);
    assert_eq!(json(&locgame(&["zeta", &t6]))["zeta"], 1);

    let capped = json(&locgame(&["zeta", &t5, "--max-cops", "1"]));
    assert_eq!(capped["zeta"]["exceeds"], 1);
}

#[test]
fn beta_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_family(dir.path(), "p4.txt", &["path", "4"]);
    let v = json(&locgame(&["beta", &p4]));
    assert_eq!(v["beta"], 1);
    assert_eq!(v["metric_dim_one"]["case"], "case1");
    let p7 = write_family(dir.path(), "p7.txt", &["paley", "7"]);
    let v = json(&locgame(&["stats", &p7]));
    assert_eq!(v["tournament"]["doubly_regular"], true);
    assert_eq!(v["tournament"]["quasirandom_deviation"], 63.0);
}

#[test]
fn play_writes_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let t4 = write_family(dir.path(), "t4.txt", &["transitive", "4"]);
    let out = dir.path().join("game.jsonl");
    let o = locgame(&["play", &t4, "--strategy", "dag_sweep", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["outcome"], "captured");
    assert!(last["round"].as_u64().unwrap() <= 4);
    for line in text.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn play_with_decompositions_and_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = write_family(dir.path(), "c3.txt", &["rotation", "1"]);
    let pd = dir.path().join("pd.json");
    std::fs::write(&pd, r#"{"bags":[[0,2],[1,2]]}"#).unwrap();
    let o = locgame(&["play", &c3, "--strategy", "path_sweep", "--decomposition", pd.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains(r#""outcome":"captured""#));

    let dd = dir.path().join("dd.json");
    std::fs::write(&dd, r#"{"index_dag":{"n":1,"arcs":[]},"bags":[[0,1,2]]}"#).unwrap();
    let o = locgame(&["play", &c3, "--strategy", "dag_decomp_sweep", "--decomposition", dd.to_str().unwrap()]);
    assert!(stdout(&o).contains(r#""outcome":"captured","round":1"#));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"bags":[[0,1],[1,2]]}"#).unwrap();
    let o = locgame(&["play", &c3, "--strategy", "path_sweep", "--decomposition", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let t7 = write_family(dir.path(), "t7.txt", &["rotation", "3"]);
    let o = locgame(&["play", &t7, "--strategy", "rotation"]);
    assert!(stdout(&o).contains(r#""outcome":"captured""#));
    let o = locgame(&["play", &t7, "--strategy", "rotation", "--cops", "1", "--max-rounds", "35"]);
    assert!(stdout(&o).contains(r#""outcome":"evaded","max_rounds":35"#));

    let sc = write_family(dir.path(), "sc.txt", &["sc_tight", "3", "1"]);
    let o = locgame(&["play", &sc, "--strategy", "sc_composite", "--inner", "solver"]);
    assert!(stdout(&o).contains(r#""outcome":"captured""#));
}

#[test]
fn verify_single_check() {
    let o = locgame(&["verify", "d3"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v[0]["id"], "d3");
    assert_eq!(v[0]["passed"], true);
    assert_eq!(locgame(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn experiment_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = locgame(&["experiment", "--n", "30", "--p", "0.5", "--trials", "10", "--seed", "7", "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,p,seed,trial,diameter,beta_greedy,k_bound,s_min,s_max,e4c_ratio");
    assert_eq!(lines.count(), 10);
    assert_eq!(locgame(&["experiment", "--n", "30", "--trials", "0"]).status.code(), Some(2));
}
