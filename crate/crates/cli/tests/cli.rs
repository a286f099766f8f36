use std::process::Command;
use std::sync::Arc;

use qcong_core::arith::integer_registry;
use qcong_core::check::Status;
use qcong_core::qverify::{congruence_registry, identity_registry};
use qcong_core::zpoly::LaurentPoly;
use qcong_core::{Catalog, CheckResult};

fn run_with(catalog: &Catalog, line: &str) -> (i32, String, String) {
    let args: Vec<String> = line.split_whitespace().map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = qcong::run(&args, catalog, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run(line: &str) -> (i32, String, String) {
    run_with(&Catalog::standard(), line)
}

fn corrupted_mod5() -> Catalog {
    let mod5 = congruence_registry().iter().find(|e| e.id == "mod5").unwrap().clone();
    let bad = mod5.with_rhs(Arc::new(|_| Ok(LaurentPoly::one().into())));
    let mut c = Catalog::standard();
    c.replace(Arc::new(bad));
    c
}

#[test]
fn verify_one_point() {
    let (code, out, err) = run("verify mod5 --n 7");
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "pass    mod5 [theorem] n=7");
    assert!(err.is_empty());
}

#[test]
fn sweep_lemma_json_round_trips() {
    let (code, out, _) = run("sweep lemma-nkk --n 0..100 --json");
    assert_eq!(code, 0);
    let parsed: Vec<CheckResult> = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.len(), 101);
    assert!(parsed.iter().all(|r| r.status == Status::Pass && r.check_id == "lemma-nkk"));
    let ns: Vec<i64> = parsed.iter().map(|r| r.params.get("n").unwrap()).collect();
    assert_eq!(ns, (0..=100).collect::<Vec<_>>());
    // field names as documented
    let raw: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rec = raw[0].as_object().unwrap();
    let mut keys: Vec<&str> = rec.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["id", "params", "status", "tag"]);
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap().trim(), out.trim());
}

#[test]
fn corrupted_rhs_exits_one_with_witness() {
    let (code, out, _) = run_with(&corrupted_mod5(), "verify mod5 --n 0..0");
    assert_eq!(code, 1);
    assert!(out.starts_with("fail"), "{out}");
    assert!(out.contains("n=0: lhs - rhs = -1"), "{out}");

    let (code, out, _) = run_with(&corrupted_mod5(), "verify mod5 --n 0..0 --json");
    assert_eq!(code, 1);
    let parsed: Vec<CheckResult> = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed[0].status, Status::Fail);
    assert!(parsed[0].witness.is_some());
}

#[test]
fn skipped_points_do_not_fail_the_run() {
    let (code, out, _) = run("sweep cor36 --n 1..9");
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("skipped")).count(), 3);
    assert!(out.ends_with("9 checks: 6 pass, 0 fail, 3 skipped\n"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    for line in [
        "",
        "bogus",
        "verify",
        "verify no-such-id --n 1",
        "verify mod5",
        "verify mod5 --n 1..3",
        "verify mod5 --n 3 --zz 1",
        "verify mod5 --n",
        "sweep mod5 --n 4..2",
        "list --n 3",
        "list no-such-id",
    ] {
        let (code, out, err) = run(line);
        assert_eq!(code, 2, "{line}");
        assert!(out.is_empty(), "{line}");
        assert!(err.contains("usage: qcong"), "{line}: {err}");
    }
}

#[test]
fn tolerance_flag_reaches_numeric_checks_only() {
    let (code, _, _) = run("verify greene-krammer --n 10 --m 3 --tol 1e-12");
    assert_eq!(code, 0);
    let (code, _, _) = run_with(&corrupted_mod5(), "verify mod5 --n 5 --tol 1e9");
    assert_eq!(code, 1);
}

#[test]
fn output_is_independent_of_jobs() {
    let (_, one, _) = run("sweep mn-to3 mod5 --n 1..10 --m 1..3 --jobs 1 --json");
    let (_, four, _) = run("sweep mod5 mn-to3 --n 1..10 --m 1..3 --jobs 4 --json");
    assert_eq!(one, four);
}

#[test]
fn listing_contents() {
    let (code, out, _) = run("list");
    assert_eq!(code, 0);
    let total = identity_registry().len() + congruence_registry().len() + integer_registry().len();
    assert_eq!(out.lines().count(), total);
    let line = |id: &str| out.lines().find(|l| l.split_whitespace().next() == Some(id)).unwrap().to_string();
    assert!(line("mod5").contains("theorem"));
    assert!(line("conj55").contains("conjecture"));
    assert!(line("andrews").contains("[s1 alpha s2 beta N=60]"));

    let (_, json, _) = run("list --json");
    let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), total);
    let (_, one, _) = run("list st-2");
    assert_eq!(one.lines().count(), 1);
    assert!(Catalog::standard().get("st-2").unwrap().statement().contains("(p^a/5)"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qcong");
    let ok = Command::new(bin).args(["verify", "mod5", "--n", "7"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "pass    mod5 [theorem] n=7");
    let usage = Command::new(bin).args(["verify", "mod5", "--q", "1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("usage: qcong"));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
