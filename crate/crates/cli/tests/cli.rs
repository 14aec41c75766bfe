use std::process::{Command, Output};

use zalgebra_core::lie::{sl, to_json};
use zalgebra_core::zalgebra::CaseReport;

fn zalgebra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zalgebra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> CaseReport {
    CaseReport::from_json(&String::from_utf8_lossy(&out.stdout)).expect("JSON report")
}

#[test]
fn sl3_case_round_trips() {
    let out = zalgebra(&["case", "sl2n1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert_eq!(rep.case, "sl2n1");
    assert!(rep.verdicts["no_ggs"]);
    assert_eq!(CaseReport::from_json(&rep.to_json()).unwrap(), rep);
}

#[test]
fn markdown_output() {
    let out = zalgebra(&["case", "borel", "--n", "2", "--format", "markdown"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("# borel"));
    assert!(text.contains("| verdict | holds |"));
}

#[test]
fn failed_verdict_exits_one() {
    let out = zalgebra(&["check-ggs", "--algebra", "gl4", "--h", "E11,E22,E23,E24,E32,E33,E34,E42,E43,E44", "--basis", "trace-powers"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("assertion failed: ggs_for_h"));
    let rep = report(&out);
    assert_eq!(rep.tables["h_side"]["degree_sum"], 8);
}

#[test]
fn charpoly_basis_passes() {
    let out = zalgebra(&["check-ggs", "--algebra", "gl4", "--h", "E11,E22,E23,E24,E32,E33,E34,E42,E43,E44"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let out = zalgebra(&["case", "no-such-case"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(zalgebra(&["case", "so2n", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn weyl_w0_for_d4() {
    let out = zalgebra(&["weyl-w0", "--type", "D4", "--arrows", "3:4"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    assert!(rep.all_hold());
}

#[test]
fn index_from_structure_constants() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sl2.json");
    std::fs::write(&path, to_json(&sl(2).unwrap())).unwrap();
    let out = zalgebra(&["index", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    assert_eq!(rep.tables["index"]["index"], 1);
    assert_eq!(rep.tables["index"]["b"], "2");
}
