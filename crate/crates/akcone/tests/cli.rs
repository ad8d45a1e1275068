use std::process::{Command, Output};

use serde_json::Value;

fn akcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_akcone")).args(args).env_remove("AKCONE_CACHE_DIR").output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = akcone(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().expect("exit code"), v)
}

#[test]
fn invariants_of_a_line() {
    let (code, v) = report(&["invariants", "[1]", "--model", "blowup:0"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!((r["g"].as_i64(), r["iota"].as_i64(), r["l"].as_i64()), (Some(0), Some(2), Some(2)));
    assert_eq!((r["sq"].as_i64(), r["Ke"].as_i64()), (Some(1), Some(-3)));
    assert_eq!(v["exit_code"], 0);
}

#[test]
fn literal_classes_carry_their_model() {
    let (code, v) = report(&["invariants", r#"{"model":{"kind":"blowup","k":1},"coeffs":[0,-1]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["sq"], -1);
    assert_eq!(v["result"]["class"], "E1");
}

#[test]
fn conic_through_three_points_reduces_in_one_step() {
    let (code, v) = report(&["reduce", "[2,1,1,1]", "--model", "b3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["normal_form"], serde_json::json!([1, 0, 0, 0]));
    assert_eq!(v["result"]["word"].as_array().map(Vec::len), Some(1));
}

#[test]
fn cone_verdicts_map_to_exit_codes() {
    let (code, v) = report(&["cone", "check", "PK", "[3,1,1,1,1,1,1,1,1,1,1]", "--model", "b10"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"], "out");
    assert_eq!(v["result"]["replayed"], true);

    let (code, _) = report(&["cone", "check", "ck", "[3,1,1]", "--model", "b2"]);
    assert_eq!(code, 0);
    let (code, v) = report(&["cone", "check", "P", "[1,1]", "--model", "b1"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["evidence"]["square"], 0);
}

#[test]
fn decomposition_sums_back() {
    let (code, v) = report(&["cone", "decompose", "[3,1,1]", "--model", "b2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["evidence"]["kind"], "decomposition");
}

#[test]
fn queries_above_the_bound_are_refused() {
    let (code, v) = report(&["cone", "check", "CK", "[30,1]", "--model", "b1", "--bound", "10"]);
    assert_eq!(code, 65);
    assert_eq!(v["result"]["error"]["kind"], "bound_exceeded");
    assert_eq!(v["result"]["error"]["details"]["degree"], 30);
}

#[test]
fn nef_and_taubes() {
    let spec = r#"{"flags":{"disjoint_minus_ones":2}}"#;
    let (code, _) = report(&["nef", "check", "[2,1,0]", "--model", "b2", "--spec", spec]);
    assert_eq!(code, 0);

    let both =
        r#"{"spec":{"model":{"kind":"blowup","k":2},"flags":{"disjoint_minus_ones":2}},"classes":[[2,0,1],[2,1,0]]}"#;
    let (code, v) = report(&["taubes-class", "--inputs", both]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["class"], serde_json::json!([4, 1, 1]));

    let one = r#"{"spec":{"model":{"kind":"blowup","k":2},"flags":{"disjoint_minus_ones":2}},"classes":[[2,0,1]]}"#;
    let (code, v) = report(&["taubes-class", "--inputs", one]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["display"], "E1");
}

#[test]
fn exceptional_tables_need_a_bound_past_eight() {
    let (code, v) = report(&["enum", "exceptional", "--k", "9"]);
    assert_eq!(code, 64);
    assert_eq!(v["result"]["error"]["kind"], "usage");
    let (code, v) = report(&["enum", "exceptional", "--k", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 240);
}

#[test]
fn lemma_suite_passes() {
    let (code, v) = report(&["verify", "lemmas", "--k", "3", "--max-degree", "6", "--seed", "7"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["result"]["properties"].as_u64().unwrap() >= 10);
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["enum", "exceptional", "--k", "3", "--cache", d];
    let (_, first) = report(&args);
    assert_eq!(first["cache"][0]["status"], "miss");
    let (_, second) = report(&args);
    assert_eq!(second["cache"][0]["status"], "hit");
    assert_eq!(first["result"], second["result"]);

    let file = second["cache"][0]["file"].as_str().unwrap().to_string();
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, text.replacen("[0,-1,0,0]", "[0,-2,0,0]", 1)).unwrap();
    let (code, v) = report(&args);
    assert_eq!(code, 65);
    assert_eq!(v["result"]["error"]["details"]["cache_file"], file.as_str());

    // the same corruption reaches the lemma suite as a data error
    let (code, _) = report(&["verify", "lemmas", "--k", "3", "--max-degree", "4", "--cache", d]);
    assert_eq!(code, 65);
}

#[test]
fn lemma_suite_reports_a_corrupted_table() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, clean) = report(&["verify", "lemmas", "--k", "2", "--cache", d]);
    assert_eq!(code, 0);
    let file = clean["cache"]
        .as_array()
        .unwrap()
        .iter()
        .map(|ev| ev["file"].as_str().unwrap().to_string())
        .find(|f| f.contains("exceptional"))
        .unwrap();
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, text.replacen("[1,1,1]", "[1,1,2]", 1)).unwrap();
    let (code, v) = report(&["verify", "lemmas", "--k", "2", "--cache", d]);
    assert_eq!(code, 65);
    assert_eq!(v["result"]["error"]["details"]["cache_file"], file.as_str());
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "lemmas", "--k", "4", "--max-degree", "5", "--seed", "11", "--samples", "40"];
    let a = akcone(&args);
    let b = akcone(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed"));
    let timed = akcone(&["invariants", "[1]", "--model", "b0", "--timing"]);
    assert!(String::from_utf8_lossy(&timed.stdout).contains("elapsed_ms"));
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(akcone(&["--no-such-flag"]).status.code(), Some(64));
    assert_eq!(akcone(&["cone", "check", "Q", "[1]", "--model", "b0"]).status.code(), Some(64));
    assert_eq!(akcone(&["--help"]).status.code(), Some(0));
    let (code, v) = report(&["invariants", "{not json"]);
    assert_eq!(code, 65);
    assert_eq!(v["result"]["error"]["kind"], "data");
    let (code, _) = report(&["invariants", "[1,2]", "--model", "b0"]);
    assert_eq!(code, 65);
}

#[test]
fn pretty_output_is_text() {
    let out = akcone(&["invariants", "[2,1]", "--model", "b1", "--pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("class: 2H - E1"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn sphere_bundle_duals() {
    let gens = r#"{"model":{"kind":"s2xs2"},"generators":[[1,-2],[0,1]]}"#;
    let (code, v) = report(&["cone", "dual", "--generators", gens]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rays"], serde_json::json!([[0, 1], [1, 2]]));
}

#[test]
fn configuration_audit() {
    let spec = r#"{"flags":{"top_stratum":true,"disjoint_minus_ones":1}}"#;
    let (code, v) = report(&["config", "audit", "[2,1]", "--model", "b1", "--spec", spec]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["summary"]["violations"], 0);
}
