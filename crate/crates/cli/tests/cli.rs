use std::io::Write;
use std::process::{Command, Output};

use elocc_cli::report::{BoundReport, CatalyzedReport, ConstructionReport, Envelope, OracleStatus, VerifyReport};
use elocc_core::catalysis::{CatalystSearchResult, ProtocolReport};
use elocc_core::multicopy::{FiniteCopyOutcome, MulticopyTrace};
use elocc_core::{ConversionReport, Exact, NumericMode};
use serde::de::DeserializeOwned;

const SRC: &str = "0.4,0.4,0.1,0.1";
const TGT: &str = "0.5,0.25,0.25";

fn elocc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elocc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Runs with `--json`, checks exit 0 and parses the envelope.
fn json<T: DeserializeOwned>(args: &[&str]) -> Envelope<T> {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = elocc(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let envelope: Envelope<T> = serde_json::from_str(&stdout(&o)).expect("report parses");
    assert_eq!(envelope.schema, 1);
    envelope
}

fn q(n: i64, d: i64) -> Exact {
    Exact::new(n.into(), d.into())
}

#[test]
fn pmax_human_output() {
    let o = elocc(&["pmax", SRC, TGT]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("p_max = 4/5 (0.8)"), "{out}");
    assert!(out.contains("argmin l = 3"), "{out}");
}

#[test]
fn pe_bound_prints_one() {
    let o = elocc(&["pe-bound", SRC, TGT]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn pmax_json_round_trip() {
    let e: Envelope<ConversionReport<Exact>> = json(&["pmax", SRC, TGT]);
    assert_eq!(e.command, "pmax");
    assert_eq!(e.mode, NumericMode::Exact);
    assert_eq!(e.report.p_max, q(4, 5));
    assert_eq!(e.report.argmin_position, 3u32.into());
    let again: Envelope<ConversionReport<Exact>> = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
    assert_eq!(again, e);
}

#[test]
fn float_json_uses_plain_numbers() {
    let o = elocc(&["--json", "--float", "pmax", SRC, TGT]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((value["report"]["pMax"].as_f64().unwrap() - 0.8).abs() < 1e-12);
    let e: Envelope<ConversionReport<f64>> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(e.mode, NumericMode::Float);
}

#[test]
fn exact_json_uses_num_den_strings() {
    let o = elocc(&["--json", "pmax", SRC, TGT]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(value["report"]["pMax"], serde_json::json!({"num": "4", "den": "5"}));
}

#[test]
fn every_command_round_trips() {
    let e: Envelope<MulticopyTrace<Exact>> = json(&["multicopy", SRC, TGT, "--mmax", "4"]);
    assert_eq!(e.report.best_copies, 3);
    assert_eq!(e.report.entries.len(), 3);

    let e: Envelope<CatalyzedReport<Exact>> = json(&["catalyzed", SRC, TGT, "--catalyst", "0.6,0.4"]);
    assert_eq!(e.report.p_catalyzed, q(1, 1));

    let e: Envelope<BoundReport<Exact>> = json(&["pe-bound", SRC, TGT]);
    assert_eq!(e.report.bound, q(1, 1));

    let e: Envelope<ConstructionReport<Exact>> = json(&["make-catalyst", SRC, TGT, "--m", "3"]);
    assert!(e.report.check.holds);
    assert!(!e.report.construction.weights_rounded);

    let e: Envelope<ProtocolReport<Exact>> =
        json(&["simulate-protocol", SRC, TGT, "--catalyst", "0.6,0.4", "--m", "2"]);
    assert!(e.report.consistent());
    assert_eq!(e.report.m_copy_p_max, q(24, 25));

    let e: Envelope<FiniteCopyOutcome<Exact>> = json(&["find-m", SRC, TGT, "--p", "1"]);
    assert!(matches!(e.report, FiniteCopyOutcome::Found { copies: 3, .. }));

    let e: Envelope<CatalystSearchResult<Exact>> = json(&["search-catalyst", SRC, TGT, "--k", "2", "--grid", "10"]);
    assert_eq!(e.report.best_p, q(1, 1));
    assert_eq!(e.report.points_evaluated, 10);

    let e: Envelope<VerifyReport> = json(&["verify-paper"]);
    assert!(e.report.passed);
}

#[test]
fn second_example_catalyst_copies() {
    let s = "0.40,0.40,0.10,0.10,0.01";
    let t = "0.50,0.25,0.20,0.05,0.01";
    let e: Envelope<CatalyzedReport<Exact>> = json(&["catalyzed", s, t, "--catalyst", "0.6,0.4", "--copies", "11"]);
    assert_eq!(e.report.p_catalyzed, q(1, 1));
    let e: Envelope<FiniteCopyOutcome<Exact>> = json(&["find-m", s, t, "--p", "1", "--cap", "4"]);
    assert!(matches!(e.report, FiniteCopyOutcome::BoundaryCase { cap: 4, .. }));
}

#[test]
fn oracle_agrees_and_reports() {
    let e: Envelope<MulticopyTrace<Exact>> = json(&["--oracle", "multicopy", SRC, TGT, "--mmax", "3"]);
    assert_eq!(e.oracle.len(), 3);
    assert!(e.oracle.iter().all(|c| c.status == OracleStatus::Agree));
    let o = elocc(&[
        "--oracle",
        "--float",
        "catalyzed",
        SRC,
        TGT,
        "--catalyst",
        "0.6,0.4",
        "--copies",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("agrees with brute force"));
}

#[test]
fn verify_command_passes() {
    let o = elocc(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 7);
    assert!(!out.contains("FAIL"));
}

#[test]
fn invalid_input_exits_two_and_names_the_coefficient() {
    let o = elocc(&["pmax", "0.5,abc,0.5", TGT]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("source: coefficient #1 (\"abc\")"),
        "{}",
        stderr(&o)
    );

    let o = elocc(&["pmax", SRC, "0.5,0.6,-0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("target: coefficient #2 is negative"),
        "{}",
        stderr(&o)
    );

    let o = elocc(&["--float", "pmax", "0.5,0.6", TGT]);
    assert_eq!(o.status.code(), Some(2));

    let o = elocc(&["find-m", SRC, TGT, "--p", "1.5"]);
    assert_eq!(o.status.code(), Some(2));

    let o = elocc(&["search-catalyst", SRC, TGT, "--k", "7"]);
    assert_eq!(o.status.code(), Some(2));

    let o = elocc(&["pmax", "0,0", TGT]);
    assert_eq!(o.status.code(), Some(2));

    let o = elocc(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn state_files() {
    let mut text = tempfile::NamedTempFile::new().unwrap();
    writeln!(text, "# first source\n0.4\n0.4\n\n0.1  # small\n0.1").unwrap();
    let mut array = tempfile::NamedTempFile::new().unwrap();
    write!(array, r#"["1/2", "1/4", "1/4"]"#).unwrap();
    let e: Envelope<ConversionReport<Exact>> =
        json(&["pmax", text.path().to_str().unwrap(), array.path().to_str().unwrap()]);
    assert_eq!(e.report.p_max, q(4, 5));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "0.5\n0.5\nhalf").unwrap();
    let o = elocc(&["pmax", bad.path().to_str().unwrap(), TGT]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("coefficient #2"), "{}", stderr(&o));
}
