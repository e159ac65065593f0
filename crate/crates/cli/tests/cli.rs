use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;

use jsonschema::JSONSchema;
use serde_json::{json, Value};

const DECLS: &str = r#"{"chains": [
  {"name": "r1", "size": "aleph0", "sib": "1"},
  {"name": "r2", "size": "aleph0", "sib": "1"},
  {"name": "s", "size": "aleph0", "sib": "aleph0"}
]}"#;

fn schema() -> &'static JSONSchema {
    static SCHEMA: OnceLock<JSONSchema> = OnceLock::new();
    SCHEMA.get_or_init(|| {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
        let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        JSONSchema::compile(&raw).expect("schema compiles")
    })
}

fn decls_file() -> PathBuf {
    let path = std::env::temp_dir().join(format!("dsc-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, DECLS).unwrap();
    path
}

/// Runs `dsc --format structured <args>`, validates the report against the
/// schema and returns it with the process exit code.
fn run(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dsc")).args(["--format", "structured"]).args(args).output().unwrap();
    let report: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stdout)));
    if let Err(errors) = schema().validate(&report) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{args:?}: report violates schema: {msgs:?}\n{report:#}");
    }
    let code = out.status.code().unwrap();
    assert_eq!(report["exit_code"], json!(code));
    (report, code)
}

fn text(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_dsc")).args(args).output().unwrap();
    let s = |b: Vec<u8>| String::from_utf8(b).unwrap();
    (s(out.stdout), s(out.stderr), out.status.code().unwrap())
}

#[test]
fn classify_examples() {
    let (r, code) = run(&["classify", "aleph0*w", "--mode", "countable"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["sib"], "2^aleph0");
    assert_eq!(r["certificate"]["rule"], "Sibincreasingunbounded");

    let (r, code) = run(&["classify", "w + aleph0*C^2", "--mode", "countable"]);
    assert_eq!(code, 2);
    assert_eq!((r["result"]["lower"].as_str(), r["result"]["upper"].as_str()), (Some("aleph0"), Some("2^aleph0")));
    assert_eq!(r["certificate"]["rule"], "BoundsOnly");

    let (r, code) = run(&["classify", "aleph1*C^1 + aleph0*C^3"]);
    assert_eq!(code, 0);
    assert_eq!(r["certificate"]["rule"], "Generalpairwisedisincreasing-1");
    assert_eq!(
        r["certificate"]["witness"],
        json!({"kind": "lambda_pair", "i": 2, "j": 3, "lambda_i": "0", "lambda_j": "aleph0"})
    );
}

#[test]
fn verify_sweep_passes() {
    let (r, code) = run(&["verify", "oracle-equivalence", "--cap", "7"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["passed"], true);
    assert_eq!(r["result"]["suites"][0]["checked"], 1936);
    assert_eq!(r["result"]["suites"][0]["failed"], 0);
    for suite in ["sibling-uniqueness", "lemma-biconditionals", "quasi-order-laws", "classifier-corpus"] {
        let (_, code) = run(&["verify", suite, "--cap", "5", "--samples", "60"]);
        assert_eq!(code, 0, "{suite}");
    }
}

#[test]
fn embedding_commands() {
    let (r, code) = run(&["embeds", "C^2 + C^2", "w + C^2"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["embeds"], true);
    assert_eq!(r["certificate"], Value::Null);
    let (r, _) = run(&["embeds", "2*C^2", "C^5"]);
    assert_eq!(r["result"]["embeds"], false);
    assert_eq!(r["result"]["obstruction"]["demand"], "2");
    let (r, _) = run(&["equimorphic", "aleph0*w + Did", "aleph0*w"]);
    assert_eq!(r["result"]["equimorphic"], true);
    let (r, _) = run(&["equimorphic", "3*C^1", "4*C^1"]);
    assert_eq!(r["result"]["equimorphic"], false);
}

#[test]
fn witness_commands() {
    let (r, code) = run(&["witnesses", "aleph0*w", "--kind", "padding", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["members"], json!(["C^1 + aleph0*w", "2*C^1 + aleph0*w", "3*C^1 + aleph0*w"]));
    let (r, _) = run(&["witnesses", "aleph0*C^2", "--kind", "bounded", "--t", "3"]);
    assert_eq!(r["result"]["members"], json!(["3*C^1 + aleph0*C^2"]));
    let (r, _) = run(&["witnesses", "Did", "--kind", "qj", "--j", "evens"]);
    assert_eq!(r["result"]["members"], json!(["Fam(2,2)"]));
    let (r, _) = run(&["witnesses", "eta + C^2", "--kind", "swap", "--target", "eta", "--k", "2"]);
    assert_eq!(r["result"]["members"].as_array().unwrap().len(), 2);
    let (r, code) = run(&["witnesses", "2*C^3", "--kind", "padding", "--k", "1"]);
    assert_eq!((code, r["error"]["code"].as_str()), (1, Some("E_CONDITION_FAILS")));
    let (r, _) = run(&["witnesses", "aleph0*C^2", "--kind", "qj"]);
    assert_eq!(r["error"]["code"], "E_NO_STRICT_FAMILY");
}

#[test]
fn oracle_commands() {
    let (r, _) = run(&["oracle", "embeds", "2,2", "3,2"]);
    assert_eq!(r["result"]["embeds"], true);
    let (r, _) = run(&["oracle", "embeds", "3", "2,2"]);
    assert_eq!(r["result"]["embeds"], false);
    let (r, _) = run(&["oracle", "iso", "2,3", "3,2"]);
    assert_eq!(r["result"]["isomorphic"], true);
    let (r, _) = run(&["oracle", "injection", "2,2", "5,5,5", "--cap", "15"]);
    assert_eq!(r["result"]["holds"], true);
    let (r, code) = run(&["oracle", "injection", "2,2", "5,5,5"]);
    assert_eq!((code, r["error"]["code"].as_str()), (1, Some("E_CAP_EXCEEDED")));
    let (r, _) = run(&["oracle", "mutual", "--cap", "5"]);
    assert_eq!(r["result"]["counterexamples"], 0);
}

#[test]
fn errors_have_stable_codes() {
    let cases: [(&[&str], &str); 6] = [
        (&["classify", "C^2 +"], "E_PARSE"),
        (&["classify", "0*C^2"], "E_ZERO_MULTIPLICITY"),
        (&["classify", "X(nope)"], "E_UNKNOWN_DECLARED"),
        (&["classify", "aleph1*w", "--mode", "countable"], "E_NOT_COUNTABLE"),
        (&["verify", "nope"], "E_UNKNOWN_SUITE"),
        (&["--decls", "/nonexistent/decls.json", "classify", "w"], "E_IO"),
    ];
    for (args, expected) in cases {
        let (r, code) = run(args);
        assert_eq!(code, 1, "{args:?}");
        assert_eq!(r["error"]["code"], expected, "{args:?}");
    }
}

#[test]
fn declarations_file() {
    let path = decls_file();
    let p = path.to_str().unwrap();
    let (r, code) = run(&["--decls", p, "classify", "aleph1*C^1 + aleph0*C^2 + X(r1) + X(r2)"]);
    assert_eq!(code, 0);
    assert_eq!(r["certificate"]["rule"], "Generalnoincreasing");
    let (r, _) = run(&["--decls", p, "classify", "X(s) + C^2", "--mode", "countable"]);
    assert_eq!(r["result"]["sib"], "aleph0");
    // expressions without declared chains are unaffected by the file
    for expr in ["aleph0*w", "w + aleph0*C^2", "Did + 3*C^1", "aleph1*C^1 + aleph0*C^3"] {
        let (mut with, _) = run(&["--decls", p, "classify", expr]);
        let (mut without, _) = run(&["classify", expr]);
        with["timing"] = Value::Null;
        without["timing"] = Value::Null;
        assert_eq!(with, without, "{expr}");
    }
    let _ = std::fs::remove_file(path);
}

#[test]
fn text_format() {
    let (out, _, code) = text(&["classify", "Did", "--mode", "countable"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Sib(Did) = 2^aleph0"), "{out}");
    assert!(out.contains("rule: Strictlyinc"));
    let (_, err, code) = text(&["classify", "C^"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error E_PARSE"), "{err}");
}

#[test]
fn schema_rejects_malformed_reports() {
    let bad = json!({"schema_version": 1, "command": "classify", "inputs": null, "result": null,
                     "certificate": null, "timing": {"elapsed_ms": 1.0}, "exit_code": 1});
    assert!(!schema().is_valid(&bad), "an error report needs an error object");
    let bad = json!({"schema_version": 2, "command": "classify", "inputs": {}, "result": {},
                     "certificate": null, "timing": {"elapsed_ms": 1.0}, "exit_code": 0});
    assert!(!schema().is_valid(&bad));
}
