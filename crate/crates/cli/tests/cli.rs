use std::io::Write;
use std::process::{Command, Output};

use tgrs::classify::ClassificationReport;
use tgrs::tgrs::SpecJson;

fn tgrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tgrs"))
        .args(args)
        .env_remove("TGRS_ENUM_BUDGET")
        .env_remove("TGRS_SEARCH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn spec_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn constructed_spec(args: &[&str]) -> SpecJson {
    let mut full = vec!["construct", "--format", "json"];
    full.extend_from_slice(args);
    let o = tgrs(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    serde_json::from_value(v["recipe"]["spec"].clone()).unwrap()
}

const EX36: [&str; 6] = ["--field", "11", "--alpha", "1,2,3,5,6,8,9,10", "--ell", "2"];

#[test]
fn classify_constructed_example() {
    let spec = constructed_spec(&["--q", "13", "--ell", "3", "--a", "5", "--eta", "2", "--modulus", "2,7,1"]);
    let file = spec_file(&serde_json::to_string(&spec).unwrap());
    let o = tgrs(&["classify", "--spec", file.path().to_str().unwrap(), "--self-dual", "--no-oracle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("MDS: yes, [10,5,6]"), "{text}");
    assert!(text.contains("self-dual: yes"), "{text}");
}

#[test]
fn classify_zero_eta_is_grs() {
    let o = tgrs(&["classify", "--field", "11", "--k", "4", "--alpha", "1,2,3,5,6,8,9,10", "--eta", "0,0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("MDS: yes (GRS)"));
}

#[test]
fn classify_self_dual_needs_n_equal_2k() {
    let o = tgrs(&["classify", "--field", "11", "--k", "3", "--alpha", "1,2,3,5,6,8,9,10", "--eta", "1,1", "--self-dual"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("outside theorem scope"));
}

#[test]
fn classify_json_round_trips() {
    let o = tgrs(&[
        "classify", "--field", "11", "--k", "4", "--alpha", "1,2,3,5,6,8,9,10", "--eta", "1,2", "--format", "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: ClassificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim_end(), stdout(&o).trim_end());
    assert_eq!(report.spec.eta, [1, 2]);
    assert!(report.defect.is_some());
}

#[test]
fn classify_csv_has_one_row() {
    let o = tgrs(&[
        "classify", "--field", "11", "--k", "4", "--alpha", "1,2,3,5,6,8,9,10", "--eta", "4,4", "--format", "csv",
    ]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("field,n,k,ell,grs,mds"));
    assert!(lines[1].starts_with("11,8,4,2,false,true"));
}

#[test]
fn malformed_spec_file_is_input_error() {
    let file = spec_file("{\"field\": \"11\", \"n\": 3}");
    let o = tgrs(&["classify", "--spec", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let bad_field = tgrs(&["classify", "--field", "12", "--k", "2", "--alpha", "1,2,3,4", "--eta", "1"]);
    assert_eq!(bad_field.status.code(), Some(1));
}

#[test]
fn search_reproduces_small_table() {
    let mut args = vec!["search", "--k", "6..7", "--format", "csv"];
    args.extend_from_slice(&EX36);
    let o = tgrs(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "k,count,n,dim,d\n6,14,8,6,3\n7,70,8,7,2\n");
    let preset = tgrs(&["table", "q11-l2", "--format", "csv"]);
    assert!(stdout(&preset).ends_with("6,14,8,6,3\n7,70,8,7,2\n"));
}

#[test]
fn search_output_ignores_worker_count() {
    let run = |w: &str| {
        let mut args = vec!["search", "--k", "3..7", "--list", "--format", "table", "--workers", w];
        args.extend_from_slice(&EX36);
        stdout(&tgrs(&args))
    };
    let one = run("1");
    assert!(one.contains("(9,10)"));
    assert_eq!(run("4"), one);
}

#[test]
fn search_with_empty_domain_prints_no_rows() {
    let file = spec_file("[]");
    let mut args = vec!["search", "--k", "3..5", "--format", "csv", "--domain", file.path().to_str().unwrap()];
    args.extend_from_slice(&EX36);
    let o = tgrs(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "k,count,n,dim,d\n");
}

#[test]
fn search_reports_bad_k_and_keeps_going() {
    let mut args = vec!["search", "--k", "1,6", "--format", "csv"];
    args.extend_from_slice(&EX36);
    let o = tgrs(&args);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "k,count,n,dim,d\n6,14,8,6,3\n");
    assert!(stderr(&o).contains("k = 1"));
}

#[test]
fn search_budget_from_environment() {
    let mut args = vec!["search", "--k", "6"];
    args.extend_from_slice(&EX36);
    let o = Command::new(env!("CARGO_BIN_EXE_tgrs"))
        .args(&args)
        .env("TGRS_SEARCH_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn construct_even_example() {
    let o = tgrs(&["construct", "--q", "13", "--ell", "4", "--a", "3", "--eta", "1,3", "--modulus", "2,7,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("MDS: yes, [8,4,5]"), "{text}");
    assert!(text.contains("self-dual: yes"));
    assert!(text.contains("eta: [1, 3, 2, 7]"));
}

#[test]
fn construct_rejects_non_coprime_ell() {
    let o = tgrs(&["construct", "--q", "13", "--ell", "13", "--a", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("gcd"));
    let forbidden = tgrs(&["construct", "--q", "13", "--ell", "3", "--a", "5", "--eta", "8"]);
    assert_eq!(forbidden.status.code(), Some(1));
}

#[test]
fn encode_unit_zero_and_parity() {
    // k - ℓ = 2, so f_0 carries no twist
    let spec = constructed_spec(&["--q", "13", "--ell", "3", "--a", "5", "--eta", "2"]);
    let json = serde_json::to_string(&spec).unwrap();
    let file = spec_file(&json);
    let path = file.path().to_str().unwrap();
    let encode = |msg: &str| {
        let o = tgrs(&["encode", "--spec", path, "--message", msg, "--format", "csv"]);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o)
            .trim()
            .split(',')
            .map(|x| x.parse::<u64>().unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(encode("1,0,0,0,0"), spec.v);
    assert_eq!(encode("0,0,0,0,0"), vec![0; 10]);

    let o = tgrs(&["encode", "--spec", path, "--message", "5,0,7,11,1", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let word: Vec<u64> = serde_json::from_value(report["codeword"].clone()).unwrap();
    let parsed: SpecJson = serde_json::from_value(report["spec"].clone()).unwrap();
    assert_eq!(parsed, spec);
    let s = spec.to_spec().unwrap();
    let f = s.field();
    let h = s.parity_check_matrix().unwrap();
    for row in h.to_rows() {
        let dot = row
            .iter()
            .zip(&word)
            .fold(f.zero(), |acc, (hi, &c)| &acc + &(hi * &f.elem(c).unwrap()));
        assert!(dot.is_zero());
    }

    let short = tgrs(&["encode", "--spec", path, "--message", "1,2"]);
    assert_eq!(short.status.code(), Some(1));
}
