use std::process::Command;
use std::sync::Arc;

use c2rp::charclasses::SearchRecord;
use c2rp::cli::{self, BasisReport, Cli, MatlemReport, SwReport, TcRow, VerifyReport};
use c2rp::tcomplexity::ZclResult;
use c2rp::wcalg::NormalForm;
use c2rp::{Error, WContext};
use clap::Parser;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let status = cli::run(std::iter::once("c2rp").chain(args.iter().copied()), &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (status, out, err) = run(args);
    assert_eq!(status, 0, "{args:?}: {err}");
    out
}

/// Parses JSON output into `T` and checks that re-serializing reproduces it.
fn round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let out = ok(args);
    let parsed: T = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
    assert_eq!(again, out, "{args:?}");
    parsed
}

#[test]
fn basis_n20_degree24() {
    let r: BasisReport = round_trip(&["basis", "--n", "20", "--degree", "24", "--format", "json"]);
    assert_eq!(r.dim, 8);
    let table = r.beta_table.unwrap();
    let row = |m: &str| table.iter().find(|r| r.monomial == m).unwrap().beta.clone();
    assert_eq!(row("x^14 y^5"), vec![1]);
    assert_eq!(row("x^6 y^9"), vec![1, 5]);
    assert_eq!(row("y^12"), vec![1, 2, 4, 8]);
}

#[test]
fn basis_outside_the_top_is_empty() {
    let r: BasisReport = round_trip(&["basis", "--n", "5", "--degree", "9", "--format", "json"]);
    assert_eq!(r.dim, 0);
    assert!(r.basis.is_empty());
    let r: BasisReport = round_trip(&["basis", "--n", "5", "--degree", "3", "--format", "json"]);
    assert_eq!(r.relations_applied, 0);
    assert!(r.beta_table.is_none());
}

#[test]
fn json_round_trips() {
    let nf: NormalForm = round_trip(&["normal-form", "--n", "4", "--monomial", "x^2 u^3 y", "--format", "json"]);
    assert_eq!(nf.normalized, "x^4 u y");
    let sw: SwReport = round_trip(&["sw", "--n", "4", "--bundle", "eta-c", "--degree", "7", "--format", "json"]);
    assert_eq!(sw.classes.len(), 1);
    assert!(sw.classes[0].nonzero);
    let sw: SwReport = round_trip(&["sw", "--n", "6", "--bundle", "tau-w", "--format", "json"]);
    assert_eq!(sw.classes.len(), 12);
    let z: ZclResult = round_trip(&["zcl", "--n", "5", "--witness", "--exhaustive", "--format", "json"]);
    assert_eq!(z.formula, 14);
    assert_eq!(z.exhaustive.unwrap().value, 14);
    assert!(z.witness.unwrap().ok());
    let rows: Vec<TcRow> = round_trip(&["tc-report", "--n-min", "2", "--n-max", "6", "--format", "json"]);
    assert_eq!(rows.len(), 5);
    let recs: Vec<SearchRecord> = round_trip(&["sw-search", "--n-max", "20", "--format", "json"]);
    assert_eq!(recs.len(), 19);
    let m: MatlemReport = round_trip(&["matlem", "--m", "100", "--format", "json"]);
    assert_eq!(m.det, 1);
    let v: VerifyReport = round_trip(&["verify", "--suite", "wu", "--n-max", "10", "--format", "json"]);
    assert!(v.ok());
    let _: c2rp::charclasses::ImmersionReport = round_trip(&["immersion", "--n", "6", "--format", "json"]);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["tc-report", "--n-min", "2", "--n-max", "12", "--exhaustive"][..],
        &["sw-search", "--n-max", "40"],
        &["sw", "--n", "9", "--bundle", "eta-c", "--format", "json"],
        &["basis", "--n", "13", "--degree", "17"],
    ] {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

#[test]
fn tc_report_csv() {
    let out = ok(&["tc-report", "--n-min", "4", "--n-max", "8", "--exhaustive"]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "n,e,d,r,zcl_formula,zcl_exhaustive,witness_ok,tc_lower,tc_upper,gap");
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 5);
    for r in &rows {
        assert_eq!(r[4], r[5], "formula vs exhaustive: {r:?}");
        assert_eq!(r[6], "true");
    }
    let gaps: Vec<&str> = rows.iter().map(|r| r[9].as_str()).collect();
    assert_eq!(gaps, ["1", "4", "6", "10", "1"]);
}

#[test]
fn empty_ranges_still_print_headers() {
    assert_eq!(ok(&["tc-report", "--n-min", "9", "--n-max", "8"]).trim(), cli::TC_HEADER.join(","));
    assert_eq!(ok(&["sw-search", "--n-max", "1"]).trim(), cli::SEARCH_HEADER.join(","));
    assert_eq!(ok(&["sw-search", "--n-max", "1", "--format", "json"]).trim(), "[]");
}

#[test]
fn sw_search_csv_rows() {
    let out = ok(&["sw-search", "--n-max", "12"]);
    assert!(out.contains("\n5,5,true,2^r+1,14\n"));
    assert!(out.contains("\n6,3,true,2^r+2,14\n"));
    assert!(out.contains("\n12,7,true,2^r+4,30\n"));
    assert!(out.contains("\n7,1,true,none,14\n"));
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["basis", "--n", "1", "--degree", "2"]).0, 2);
    assert_eq!(run(&["zcl", "--n", "1"]).0, 2);
    assert_eq!(run(&["sw", "--n", "4", "--bundle", "nu", "--degree", "1"]).0, 2);
    assert_eq!(run(&["sw", "--n", "4", "--bundle", "eta-c", "--degree", "8"]).0, 2);
    assert_eq!(run(&["basis", "--n", "4", "--degree", "2", "--format", "csv"]).0, 2);
    assert_eq!(run(&["normal-form", "--n", "4", "--monomial", "x^2 z"]).0, 2);
    assert_eq!(run(&["matlem", "--m", "0"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["zcl", "--n", "9", "--exhaustive"]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(cli::exit_code(&Error::RouteMismatch(String::new())), 4);
}

#[test]
fn verify_suites_pass_on_small_ranges() {
    for suite in ["hg", "duality", "wu", "whitney", "zcl", "top-class"] {
        let (status, out, _) = run(&["verify", "--suite", suite, "--n-max", "12"]);
        assert_eq!(status, 0, "{out}");
        assert!(out.trim_end().ends_with("PASS"));
    }
    let (status, out, _) = run(&["verify", "--suite", "matlem", "--m-max", "4096"]);
    assert_eq!(status, 0, "{out}");
}

#[test]
fn verify_reports_an_injected_failure() {
    // (suite, degree, ambient index) of a flipped reduction entry for n = 20.
    // The cup pairing only sees entries that change products into the top class.
    for (suite, degree, index) in [("hg", 24, 5), ("duality", 38, 0), ("top-class", 38, 0)] {
        let corrupted = |n: usize| -> Result<Arc<WContext>, Error> {
            let mut ctx = WContext::new(n)?;
            if n == 20 {
                ctx.grassmann_mut().corrupt_for_testing(degree, index, 0);
            }
            Ok(Arc::new(ctx))
        };
        let args = Cli::try_parse_from(["c2rp", "verify", "--suite", suite, "--n-max", "24", "--format", "json"]).unwrap();
        let (body, status) = cli::execute(&args, &corrupted).unwrap();
        assert_eq!(status, 4, "{suite}: {body}");
        let r: VerifyReport = serde_json::from_str(&body).unwrap();
        assert!(!r.failures.is_empty());
        assert!(r.failures.iter().all(|f| f.instance == "n=20"), "{body}");
    }
}

#[test]
fn binary_honours_env_and_output_file() {
    let dir = std::env::temp_dir().join(format!("c2rp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tc.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_c2rp"))
        .args(["tc-report", "--n-min", "2", "--n-max", "9", "--output"])
        .arg(&path)
        .env("C2RP_JOBS", "1")
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), ok(&["tc-report", "--n-min", "2", "--n-max", "9"]));
    let status = Command::new(env!("CARGO_BIN_EXE_c2rp"))
        .args(["zcl", "--n", "10", "--exhaustive"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    let bad_jobs = Command::new(env!("CARGO_BIN_EXE_c2rp"))
        .args(["matlem", "--m", "3"])
        .env("C2RP_JOBS", "many")
        .status()
        .unwrap();
    assert_eq!(bad_jobs.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
