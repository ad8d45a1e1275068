//! The shipped schema documents accept what the binary prints.

use std::path::Path;
use std::process::Command;

use jsonschema::{Resource, Validator};
use serde_json::Value;

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn validator(root: &str) -> Validator {
    let mut opts = jsonschema::options();
    for name in ["class.schema.json", "spec.schema.json", "table.schema.json", "certificate.schema.json"] {
        opts = opts.with_resource(format!("json-schema:///{name}"), Resource::from_contents(schema(name)).unwrap());
    }
    opts.build(&schema(root)).unwrap()
}

fn run(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_akcone")).args(args).env_remove("AKCONE_CACHE_DIR").output().unwrap();
    serde_json::from_slice(&out.stdout).unwrap()
}

fn assert_valid(v: &Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{doc}\n{errors:#?}");
}

#[test]
fn reports_validate() {
    let v = validator("report.schema.json");
    let spec = r#"{"flags":{"disjoint_minus_ones":2}}"#;
    let runs: &[&[&str]] = &[
        &["invariants", r#"{"model":{"kind":"blowup","k":0},"coeffs":[1]}"#],
        &["reduce", "[5,2,2,2,1]", "--model", "b4"],
        &["enum", "exceptional", "--k", "4"],
        &["enum", "spherical", "--k", "2", "--max-degree", "4", "--square", "pos"],
        &["cone", "check", "P", "[1,1]", "--model", "b1"],
        &["cone", "check", "PK", "[3,1,1,1,1,1,1,1,1,1,1]", "--model", "b10"],
        &["cone", "check", "CK", "[7,3,3,3,3,3,3,3,3,3,3]", "--model", "b10", "--bound", "10"],
        &["cone", "decompose", "[3,1,1]", "--model", "b2"],
        &["cone", "dual", "--generators", r#"{"model":{"kind":"s2xs2"},"generators":[[1,-1],[0,1]]}"#],
        &["nef", "check", "[2,1,0]", "--model", "b2", "--spec", spec],
        &["nef", "check", "[1,2,0]", "--model", "b2", "--spec", spec],
        &["locus", "[2,1,0]", "--model", "b2", "--spec", spec],
        &["taubes-class", "--inputs", r#"{"spec":{"flags":{"disjoint_minus_ones":2}},"classes":[[2,0,1]]}"#],
        &["config", "enum", "[3,1,1]", "--model", "b2"],
        &["config", "audit", "[3,1,1]", "--model", "b2", "--spec", spec],
        &["verify", "lemmas", "--k", "2", "--max-degree", "4", "--samples", "20"],
        &["verify", "acceptance", "--only", "05"],
        &["invariants", "[1,2]", "--model", "b0", "--timing"],
        &["cone", "check", "CK", "[30,1]", "--model", "b1", "--bound", "10"],
    ];
    for args in runs {
        assert_valid(&v, &run(args));
    }
}

#[test]
fn inputs_validate() {
    let class = validator("class.schema.json");
    assert_valid(&class, &serde_json::json!({"model": {"kind": "blowup", "k": 2}, "coeffs": [3, "1", "1/2"]}));
    assert!(!class.is_valid(&serde_json::json!({"model": {"kind": "blowup"}, "coeffs": [1]})));
    let spec = validator("spec.schema.json");
    assert_valid(&spec, &serde_json::json!({"negative_classes": [[1, 1, 1]], "flags": {"disjoint_minus_ones": 3}}));
    assert_valid(&spec, &serde_json::json!({"flags": {"sphere_bundle_case": {"case": "ii", "p": 1}}}));
    assert!(!spec.is_valid(&serde_json::json!({"flags": {"unknown": true}})));
}
