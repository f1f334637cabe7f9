use std::path::Path;
use std::process::{Command, Output};

use fda_cli::{run_task, GoldenReport, TaskConfig};
use fda_core::Verdict;
use serde_json::Value;

fn fdacheck(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdacheck"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_names_every_task() {
    let dir = tempfile::tempdir().unwrap();
    let o = fdacheck(dir.path(), &["--list"]);
    assert!(o.status.success());
    for t in fda_cli::TASKS {
        assert!(stdout(&o).contains(t.id));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(fdacheck(dir.path(), &["--task", "clifford.d3"]).status.code(), Some(0));
    assert_eq!(fdacheck(dir.path(), &["--task", "no.such.task"]).status.code(), Some(2));
    let capped = fdacheck(dir.path(), &["--task", "family", "--beta", "1"]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(stdout(&capped).contains("--long"));
    assert_eq!(fdacheck(dir.path(), &["--task", "family", "--alpha", "x/0"]).status.code(), Some(2));
    let tiny = fdacheck(dir.path(), &["--task", "s4.cohomology", "--cap", "0"]);
    assert_eq!(tiny.status.code(), Some(2));
}

#[test]
fn report_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let o = fdacheck(dir.path(), &["--task", "hopf.pushout", "--json"]);
    assert!(o.status.success());
    let printed: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(printed["report"]["verdict"], "pass");
    assert_eq!(printed["ledger_hash"], fda_cli::ledger_hash());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
}

#[test]
fn golden_round_trip_and_regression() {
    let dir = tempfile::tempdir().unwrap();
    let golden = dir.path().join("golden.json");
    let g = golden.to_str().unwrap();
    let args = ["--task", "sphere.cohomology", "--n", "3"];
    let w = fdacheck(dir.path(), &[&args[..], &["--write-golden", g]].concat());
    assert!(w.status.success());
    assert!(fdacheck(dir.path(), &[&args[..], &["--compare", g]].concat()).status.success());

    let mut edited: GoldenReport = serde_json::from_str(&std::fs::read_to_string(&golden).unwrap()).unwrap();
    edited.pinned.insert("sphere.cohomology/n".into(), Value::from(4));
    std::fs::write(&golden, serde_json::to_string(&edited).unwrap()).unwrap();
    let o = fdacheck(dir.path(), &[&args[..], &["--compare", g]].concat());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("golden mismatch sphere.cohomology/n"));

    edited.ledger_hash = "0".repeat(64);
    std::fs::write(&golden, serde_json::to_string(&edited).unwrap()).unwrap();
    let o = fdacheck(dir.path(), &[&args[..], &["--compare", g]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ledger"));
}

#[test]
fn library_entry_point() {
    let r = run_task(&TaskConfig::new("s4.cohomology").with("max_degree", 12)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.scalars["dims"], serde_json::json!([1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]));
    let r = run_task(&TaskConfig::new("sphere.cohomology").with("n", 5)).unwrap();
    assert_eq!(r.scalars["dims"], serde_json::json!([1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
    let mut stale = TaskConfig::new("hopf.pushout");
    stale.ledger_hash = "beef".into();
    assert!(run_task(&stale).is_err());
}

#[test]
fn flat_forms_verdicts() {
    let r = run_task(&TaskConfig::new("flat.forms")).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r:#?}");
    let inner = &r.children[2].children[0];
    assert_eq!(inner.verdict, Verdict::Fail);
    assert_eq!(inner.witness_label.as_deref(), Some("g7"));
}
