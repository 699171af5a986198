use std::path::Path;
use std::process::{Command, Output};

use apcrucial::search::SearchRecord;
use apcrucial::Permutation;

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apcrucial"))
        .args(args)
        .current_dir(dir)
        .env("APCRUCIAL_CACHE", dir.join("cache.jsonl"))
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), args)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    let o = run(&["check", "--k", "3", "--l", "3", "--perm", "216453", "--property", "crucial"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("crucial"));

    let o = run(&["check", "--k", "3", "--l", "3", "--perm", "73418562", "--property", "bicrucial"]);
    assert_eq!(code(&o), 0);

    let o = run(&["check", "--k", "3", "--l", "3", "--perm", "123", "--property", "anti"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("positions 1,2,3 (d=1)"), "{}", stdout(&o));

    let o = run(&["check", "--k", "3", "--l", "3", "--perm", "216453", "--property", "bicrucial"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn check_parse_errors_are_usage_errors() {
    let o = run(&["check", "--k", "3", "--l", "3", "--perm", "21(3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("offset 2"), "{}", stderr(&o));

    let o = run(&["check", "--k", "3", "--l", "3", "--perm", "2213"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("offset 1"), "{}", stderr(&o));

    let o = run(&["check", "--k", "3", "--perm", "21"]);
    assert_eq!(code(&o), 2);
    let o = run(&["check", "--k", "2", "--l", "3", "--perm", "21"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn check_json_in_and_out() {
    let o = run(&["check", "--k", "3", "--l", "3", "--perm", "[2,1,6,4,5,3]", "--json-in", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["verdict"]["kind"], "crucial");
    assert_eq!(v["verdict"]["perm"], serde_json::json!([2, 1, 6, 4, 5, 3]));
    assert_eq!(v["verdict"]["right_witnesses"]["a_star"], 4);
    assert_eq!(v["verdict"]["right_witnesses"]["b_star"], 5);
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn construct_examples() {
    let o = run(&["construct", "bicrucial-3l", "--l", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "(13)(14)(12)(11)198(10)726543");

    let o = run(&["construct", "make-bicrucial", "--k", "3", "--l", "3", "--from", "216453"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "8472(12)3(10)1(11)695");

    let o = run(&["construct", "crucial", "--k", "6", "--l", "5", "--n", "30", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["verdict"]["kind"], "crucial");
    let p: Permutation = v["perm"].as_str().unwrap().parse().unwrap();
    assert_eq!(p.as_slice().len(), 30);
}

#[test]
fn construct_layout_example_prints_layout_and_fails() {
    let o = run(&[
        "construct", "figure1", "--k", "4", "--l", "5", "--n", "17",
        "--base", "1(17)9(13)5(15)7(11)3(16)8(12)4(14)6(10)2",
    ]);
    assert_eq!(stdout(&o).trim(), "4(13)1(10)6(11)725(12)893(17)(16)(15)(14)");
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not anti-monotone"));
}

#[test]
fn construct_errors() {
    let o = run(&["construct", "double-odd", "--k", "3", "--l", "3"]);
    assert_eq!(code(&o), 2);
    let o = run(&["construct", "no-such-family"]);
    assert_eq!(code(&o), 2);
    let o = run(&["construct", "crucial", "--k", "3", "--l", "3", "--n", "5"]);
    assert_eq!(code(&o), 1);
    let o = run(&["construct", "crucial", "--k", "3", "--l", "3", "--n", "18"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("unsupported"));
}

#[test]
fn every_printed_permutation_reparses() {
    for args in [
        vec!["construct", "crucial-4l", "--l", "7"],
        vec!["construct", "crucial-3l", "--l", "8"],
        vec!["construct", "anti-monotone-33", "--n", "50"],
        vec!["construct", "double-even", "--k", "3", "--l", "3", "--from", "216453"],
        vec!["construct", "extend-bicrucial-odd", "--k", "3", "--l", "3", "--from", "73418562"],
        vec!["construct", "shuffle-down", "--from", "21", "--with", "21"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        let text = stdout(&o);
        let p: Permutation = text.trim().parse().unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(p.to_string(), text.trim());
    }
}

#[test]
fn search_minimal_crucial() {
    let o = run(&["search", "minimal-crucial", "--k", "3", "--l", "3", "--no-cache"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("n = 6"), "{}", stdout(&o));

    let o = run(&["search", "minimal-crucial", "--k", "3", "--l", "4", "--from", "1", "--json", "--no-cache"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["minimal"], 8);
    assert_eq!(v["records"].as_array().unwrap().len(), 8);
}

#[test]
fn search_exists_and_count() {
    let o = run(&["search", "exists", "--k", "3", "--l", "3", "--n", "9", "--no-cache"]);
    assert_eq!(code(&o), 1);
    let o = run(&["search", "count", "--k", "3", "--l", "3", "--n", "8", "--kind", "bicrucial", "--json", "--no-cache"]);
    assert_eq!(code(&o), 0);
    let rec: SearchRecord = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec.count, Some(34));
    let o = run(&["search", "exists", "--k", "3", "--l", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = run(&["search", "count", "--k", "4", "--l", "4", "--n", "12", "--max-nodes", "1000", "--json"]);
    assert_eq!(code(&o), 3);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["partial"]["n"], 12);

    let o = run(&["classify", "--k", "4", "--l", "4", "--max-n", "12", "--max-nodes", "1000"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains('?'));
}

#[test]
fn classify_table() {
    let o = run(&["classify", "--k", "3", "--l", "3", "--max-n", "9", "--kind", "crucial", "--json"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    let exists: Vec<bool> = rows.iter().map(|r| r["exists"].as_bool().unwrap()).collect();
    assert_eq!(exists, [false, false, false, false, false, true, true, true, false]);
}

#[test]
fn cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("explicit.jsonl");
    let args = ["search", "count", "--k", "3", "--l", "3", "--n", "8", "--cache", path.to_str().unwrap()];
    let first = run_in(dir.path(), &args);
    assert_eq!(code(&first), 0);
    let lines = std::fs::read_to_string(&path).unwrap();
    assert_eq!(lines.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(lines.trim()).unwrap();
    assert!(v["engine_version"].as_str().unwrap().starts_with("apcrucial-"));

    let second = run_in(dir.path(), &args);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);

    let mut forced = args.to_vec();
    forced.push("--force");
    run_in(dir.path(), &forced);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);

    // The environment variable is the default location.
    run_in(dir.path(), &["search", "exists", "--k", "3", "--l", "3", "--n", "6"]);
    assert!(dir.path().join("cache.jsonl").exists());
}

#[test]
fn malformed_cache_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cache.jsonl"), "nonsense\n").unwrap();
    let o = run_in(dir.path(), &["search", "exists", "--k", "3", "--l", "3", "--n", "6"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn verify_suite_passes() {
    let o = run(&["verify", "paper"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains("[computed]"));

    let o = run(&["verify", "--json"]);
    let facts: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(facts.iter().all(|f| f["passed"] == true));
}

#[test]
fn verify_fails_when_budget_is_too_small() {
    let o = run(&["verify", "--max-nodes", "10"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
}
