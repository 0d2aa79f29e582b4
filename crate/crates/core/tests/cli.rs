mod common;

use std::fs;
use std::process::{Command, Output};

use common::data;

fn claimreader(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_claimreader"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_json_is_parseable() {
    let file = data("corpus").join("T8.en.txt");
    let o = claimreader(&["analyze", file.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report_id"], "T8");
    assert_eq!(v["entities"].as_array().unwrap().len(), 2);
    assert_eq!(v["impact"]["status"], "inferred");
}

#[test]
fn analyze_text_and_pretty() {
    let file = data("corpus").join("T15.en.txt");
    let o = claimreader(&["analyze", file.to_str().unwrap()]);
    assert!(stdout(&o).contains("impact: inferred (neg-ability-stop)"));
    let o = claimreader(&["analyze", file.to_str().unwrap(), "--pretty"]);
    assert!(stdout(&o).starts_with("{\n  \"report_id\": \"T15\""));
}

#[test]
fn shipped_corpus_passes() {
    let o = claimreader(&[
        "corpus",
        data("corpus").to_str().unwrap(),
        "--gold",
        data("gold").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.starts_with("id "));
    assert!(!out.contains("FAIL"));
}

#[test]
fn gold_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(
        data("corpus").join("T8.en.txt"),
        dir.path().join("T8.en.txt"),
    )
    .unwrap();
    fs::write(
        dir.path().join("T8.gold.json"),
        r#"{"report_id":"T8","expected_entity_count":3,"expected_impact_status":"explicit","expected_clue_kinds":[]}"#,
    )
    .unwrap();
    let o = claimreader(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("entities: expected 3, found 2"));
}

#[test]
fn corrupt_gold_exits_two_naming_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(
        data("corpus").join("T9.en.txt"),
        dir.path().join("T9.en.txt"),
    )
    .unwrap();
    fs::write(dir.path().join("T9.gold.json"), "[1,").unwrap();
    let o = claimreader(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("T9.gold.json"));
}

#[test]
fn empty_corpus_is_success() {
    let dir = tempfile::tempdir().unwrap();
    let o = claimreader(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn kb_check() {
    let o = claimreader(&["kb", "check", data("kb").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("ok:"));

    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("hierarchy.tsv"),
        "car\tisa\tvehicle\nvehicle\tisa\tcar\n",
    )
    .unwrap();
    fs::copy(data("kb").join("rules.tsv"), dir.path().join("rules.tsv")).unwrap();
    fs::copy(
        data("kb").join("lexicon.tsv"),
        dir.path().join("lexicon.tsv"),
    )
    .unwrap();
    let o = claimreader(&["kb", "check", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycle"));
}

#[test]
fn missing_input_exits_two() {
    let o = claimreader(&["analyze", "/no/such/report.txt"]);
    assert_eq!(o.status.code(), Some(2));
}
