use std::process::{Command, Output};

use serde_json::Value;

fn threesq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threesq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(args: &[&str]) -> (Vec<Value>, i32) {
    let mut full = vec!["--output", "records"];
    full.extend_from_slice(args);
    let out = threesq(&full);
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    let recs = text
        .lines()
        .map(|line| serde_json::from_str(line).unwrap_or_else(|e| panic!("bad record {line:?}: {e}")))
        .collect();
    (recs, out.status.code().expect("exit code"))
}

#[test]
fn decompose_examples() {
    let (recs, code) = records(&["decompose", "3", "0", "33"]);
    assert_eq!(code, 0);
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["result"]["roots"], serde_json::json!([1, 1, 1]));
    assert_eq!(recs[1]["result"]["roots"], serde_json::json!([0, 0, 0]));
    assert_eq!(recs[2]["result"]["roots"], serde_json::json!([4, 4, 1]));
    assert_eq!(recs[2]["result"]["case"], "8m+1/2");
    assert!(recs.iter().all(|r| r["status"] == "ok" && r["command"] == "decompose"));
}

#[test]
fn decompose_ineligible() {
    for strict in [false, true] {
        let mut args = vec!["decompose", "7", "112"];
        if strict {
            args.insert(0, "--strict");
        }
        let (recs, code) = records(&args);
        assert_eq!(code, 1);
        assert_eq!(recs[0]["status"], "error");
        assert_eq!(recs[0]["result"]["witness"], serde_json::json!({"s": 0, "m": 0}));
        // 112 = 4^2 * 7
        assert_eq!(recs[1]["result"]["witness"], serde_json::json!({"s": 2, "m": 0}));
        assert!(recs[0]["message"].as_str().unwrap().contains("4^0"));
    }
}

#[test]
fn decompose_limits() {
    let cap = (1u64 << 62).to_string();
    let (recs, code) = records(&["decompose", &cap]);
    assert_eq!(code, 0);
    let roots: Vec<u128> = serde_json::from_value(recs[0]["result"]["roots"].clone()).unwrap();
    assert_eq!(roots.iter().map(|r| r * r).sum::<u128>(), 1u128 << 62);

    let over = ((1u64 << 62) + 1).to_string();
    let (recs, code) = records(&["decompose", &over]);
    assert_eq!(code, 2);
    assert_eq!(recs[0]["status"], "error");

    assert_eq!(threesq(&["decompose", "-4"]).status.code(), Some(2));
    assert_eq!(threesq(&["decompose", "abc"]).status.code(), Some(2));
}

#[test]
fn exceptions_examples() {
    let (recs, code) = records(&["exceptions", "--form", "t+4t+5t", "--bound", "1000", "--expect", "{2}"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["match"], true);
    assert_eq!(recs[0]["result"]["exceptions"], serde_json::json!([2]));

    let (recs, code) = records(&["exceptions", "--form", "s+s+t", "--bound", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["exceptions"], serde_json::json!([]));

    let (recs, code) = records(&[
        "exceptions",
        "--form",
        "2s+3s+2t",
        "--bound",
        "1000",
        "--expect",
        "{1,19,43,94}",
    ]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["match"], true);
}

#[test]
fn exceptions_expect_below_bound() {
    // 94 lies above the bound and is out of scope
    let (recs, code) = records(&[
        "exceptions",
        "--form",
        "2s+3s+2t",
        "--bound",
        "50",
        "--expect",
        "{1,19,43,94}",
    ]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["expected"], serde_json::json!([1, 19, 43]));

    let (recs, code) = records(&[
        "exceptions",
        "--form",
        "2s+3s+2t",
        "--bound",
        "100",
        "--expect",
        "{1,19}",
    ]);
    assert_eq!(code, 1);
    assert_eq!(recs[0]["status"], "error");
    assert_eq!(recs[0]["result"]["match"], false);
}

#[test]
fn exceptions_usage_errors() {
    let (recs, code) = records(&["exceptions", "--form", "s+2x", "--bound", "10"]);
    assert_eq!(code, 2);
    assert_eq!(recs[0]["status"], "error");

    let (_, code) = records(&[
        "--bound-ceiling",
        "100",
        "exceptions",
        "--form",
        "s+t",
        "--bound",
        "101",
    ]);
    assert_eq!(code, 2);

    let (_, code) = records(&["exceptions", "--form", "s+t", "--bound", "10", "--expect", "{1,a}"]);
    assert_eq!(code, 2);
}

#[test]
fn threads_do_not_change_output() {
    let args = ["exceptions", "--form", "5s+3t+2t", "--bound", "20000"];
    let one = threesq(&[&["--output", "records", "--threads", "1"][..], &args].concat());
    let four = threesq(&[&["--output", "records", "--threads", "4"][..], &args].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn check_examples() {
    let (recs, code) = records(&["check", "--tri-coeffs", "1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["status"], "Universal");

    let (recs, _) = records(&["check", "--form", "s+4t+4t"]);
    assert_eq!(recs[0]["result"]["status"], "NotAsymptoticallyUniversal");
    assert_eq!(recs[0]["result"]["evidence"]["two_adic"]["holds"], false);

    let (recs, _) = records(&["check", "--form", "t+2t+6t"]);
    assert_eq!(recs[0]["result"]["status"], "AsymptoticallyUniversal");
    assert_eq!(recs[0]["result"]["evidence"]["relations"].as_array().unwrap().len(), 3);

    let (recs, _) = records(&["check", "--tri-coeffs", "1,2,6"]);
    assert_eq!(recs[0]["result"]["status"], "NotUniversal");

    let (recs, _) = records(&["check", "--odd-square-coeffs", "1,1,1"]);
    assert_eq!(recs[0]["result"]["status"], "UniversalOnClass");
}

#[test]
fn check_errors() {
    let (recs, code) = records(&["check", "--form", "s+s+s"]);
    assert_eq!(code, 1);
    assert!(recs[0]["message"].as_str().unwrap().contains("sss"));
    let (_, code) = records(&["check", "--form", "2t+2t+4t"]);
    assert_eq!(code, 1);
    assert_eq!(threesq(&["check"]).status.code(), Some(2));
    assert_eq!(
        threesq(&["check", "--form", "t+t+t", "--tri-coeffs", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_suites() {
    let (recs, code) = records(&["verify", "identities", "--bound", "100"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["failed"], 0);
    let (recs, code) = records(&["verify", "legendre-scan", "--bound", "2000"]);
    assert_eq!(code, 0);
    assert!(recs[0]["result"]["checked"].as_u64().unwrap() > 0);
    assert_eq!(threesq(&["verify", "nosuch"]).status.code(), Some(2));
}

#[test]
fn represent_and_count() {
    let (recs, code) = records(&["represent", "--form", "s+s", "25", "3", "--count"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["count"], 4);
    assert_eq!(recs[1]["result"]["indices"], Value::Null);
    let (recs, _) = records(&["represent", "--form", "s+s", "25", "--count", "--unordered"]);
    assert_eq!(recs[0]["result"]["count"], 2);
}

#[test]
fn text_matches_records() {
    let text = String::from_utf8(threesq(&["decompose", "33"]).stdout).unwrap();
    assert!(text.contains("roots: [4,4,1]"));
    assert!(text.contains("case: 8m+1/2"));
    let text = String::from_utf8(threesq(&["decompose", "28"]).stdout).unwrap();
    assert!(text.contains("error"));
    assert!(text.contains("s: 1"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--output",
        "records",
        "exceptions",
        "--form",
        "4s+3t+t",
        "--bound",
        "5000",
    ];
    assert_eq!(threesq(&args).stdout, threesq(&args).stdout);
}
