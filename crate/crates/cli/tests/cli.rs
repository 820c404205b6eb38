//! End-to-end tests of the qh binary: exit-status contract, text round
//! trips, and JSON output conformance to the shipped schema.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const SCHEMA: &str = include_str!("../schema/output.schema.json");

fn qh() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qh"))
}

fn run(args: &[&str]) -> Output {
    qh().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qh-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

/// Resolves `#/definitions/...` references inside the schema document.
fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let mut node = root;
    for part in reference.trim_start_matches("#/").split('/') {
        node = &node[part];
    }
    node
}

/// Checks the subset of JSON Schema the shipped schema uses: $ref, oneOf,
/// enum, type, properties, required, additionalProperties and items.
fn conforms(root: &Value, schema: &Value, value: &Value) -> bool {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        return conforms(root, resolve(root, reference), value);
    }
    if let Some(one_of) = schema.get("oneOf").and_then(Value::as_array) {
        return one_of.iter().filter(|s| conforms(root, s, value)).count() == 1;
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return false;
        }
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
            "boolean" => value.is_boolean(),
            other => panic!("schema type `{other}` not supported"),
        };
        if !ok {
            return false;
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required {
                if !obj.contains_key(key.as_str().unwrap()) {
                    return false;
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    if !conforms(root, sub, v) {
                        return false;
                    }
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false))
                && obj.keys().any(|k| !props.contains_key(k))
            {
                return false;
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), value.as_array()) {
        for v in arr {
            if !conforms(root, items, v) {
                return false;
            }
        }
    }
    true
}

#[test]
fn table_prints_the_quantum_entry() {
    let output = run(&["table", "--manifold", "s2"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("pt * pt = 1*q^-2*t^-1 [S2]"));
}

#[test]
fn printed_elements_reparse_to_equal_elements() {
    let first = run(&["qmul", "--manifold", "s2", "--lhs", "[pt]", "--rhs", "[pt]"]);
    assert!(first.status.success());
    let text = stdout(&first).trim().to_string();
    assert_eq!(text, "1*q^-2*t^-1 [S2]");
    // Multiplying the reparsed element by the identity reproduces it.
    let second = run(&["qmul", "--manifold", "s2", "--lhs", &text, "--rhs", "[S2]"]);
    assert!(second.status.success());
    assert_eq!(stdout(&second).trim(), text);
}

#[test]
fn json_outputs_validate_against_the_shipped_schema() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["table", "--manifold", "s2"],
        vec!["table", "--manifold", "cp2"],
        vec!["qmul", "--manifold", "cp2", "--lhs", "[L]", "--rhs", "[L]"],
        vec![
            "inverse",
            "--manifold",
            "s2",
            "--element",
            "1*q^1*t^1/2 [pt]",
        ],
        vec!["order", "--manifold", "s2", "--element", "1*q^1*t^1/2 [pt]"],
        vec![
            "order",
            "--manifold",
            "cp2",
            "--element",
            "[L]",
            "--bound",
            "8",
        ],
        vec!["product", "--left", "s2", "--right", "sigma1"],
        vec![
            "kappa",
            "--manifold",
            "s2",
            "--with",
            "sigma1",
            "--element",
            "1*q^1*t^1/2 [pt]",
        ],
        vec![
            "kappa",
            "--manifold",
            "s2",
            "--element",
            "1*q^1*t^1/2 [pt]",
            "--map",
            "kappa-prime",
        ],
        vec!["seidel", "--action", "s2-rotation"],
        vec!["seidel", "--action", "cp2-rotation"],
        vec!["verify-thm1", "--action", "s2-rotation", "--with", "sigma1"],
        vec!["verify-thm2", "--action", "sigma2-synthetic"],
        vec!["validate", "--manifold", "s2"],
    ];
    for args in invocations {
        let mut full = args.clone();
        full.extend(["--format", "json"]);
        let output = run(&full);
        assert!(
            output.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        let value: Value = serde_json::from_str(&stdout(&output))
            .unwrap_or_else(|e| panic!("{args:?}: invalid JSON: {e}"));
        assert!(
            conforms(&schema, &schema, &value),
            "{args:?}: schema violation:\n{value:#}"
        );
        assert_eq!(value["command"], args[0], "{args:?}");
    }
}

#[test]
fn verification_success_is_exit_zero() {
    for (action, with) in [
        ("s2-rotation", "sigma1"),
        ("s2-rotation", "sigma2"),
        ("cp2-rotation", "point"),
    ] {
        let output = run(&["verify-thm1", "--action", action, "--with", with]);
        assert_eq!(output.status.code(), Some(0), "{action} x {with}");
        assert!(stdout(&output).starts_with("verified"));
    }
    let output = run(&["verify-thm2", "--action", "sigma2-synthetic"]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn input_errors_are_exit_two() {
    let unknown = run(&["table", "--manifold", "k3"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown manifold"));

    let bad_element = run(&[
        "qmul",
        "--manifold",
        "s2",
        "--lhs",
        "nonsense",
        "--rhs",
        "[pt]",
    ]);
    assert_eq!(bad_element.status.code(), Some(2));

    let not_a_unit = run(&["inverse", "--manifold", "sigma1", "--element", "[pt]"]);
    assert_eq!(not_a_unit.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&not_a_unit.stderr).contains("not a unit"));

    let mismatched = run(&["product", "--left", "s2", "--right", "cp2"]);
    assert_eq!(mismatched.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&mismatched.stderr).contains("monotonicity mismatch"));

    let usage = qh().arg("no-such-command").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn violating_table_is_exit_one_with_findings() {
    let bad = r#"{
        "name": "bad-s2",
        "dim": 2,
        "basis": [{"name": "pt", "degree": 0}, {"name": "S2", "degree": 2}],
        "pairing": [[0, 1, 1], [1, 0, 1]],
        "monotone_lambda": {"num": 1, "den": 2},
        "spherical_classes": [
            {"name": "0", "c1": 0, "omega": {"num": 0, "den": 1}},
            {"name": "line", "c1": 2, "omega": {"num": 1, "den": 1}}
        ],
        "gw": [{"class": "line", "args": [0, 1, 1], "value": 1}]
    }"#;
    let path = temp_file("bad-table.json", bad);
    let output = run(&["validate", "--manifold-file", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("degree gate violation"));
    std::fs::remove_file(path).ok();
}

#[test]
fn product_export_round_trips_through_the_loader() {
    let exported = run(&["product", "--left", "s2", "--right", "sigma1"]);
    assert!(exported.status.success());
    let path = temp_file("product.json", &stdout(&exported));

    let table = run(&["table", "--manifold-file", path.to_str().unwrap()]);
    assert!(table.status.success());
    assert!(stdout(&table).contains("pt⊗T2 * pt⊗T2 = 1*q^-2*t^-1 [S2⊗T2]"));

    let validate = run(&["validate", "--manifold-file", path.to_str().unwrap()]);
    assert_eq!(validate.status.code(), Some(0));
    std::fs::remove_file(path).ok();
}

#[test]
fn catalog_dir_extends_the_builtin_names() {
    let dir = std::env::temp_dir().join(format!("qh-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // A custom two-sphere with doubled symplectic area.
    let custom = r#"{
        "name": "bigs2",
        "dim": 2,
        "basis": [{"name": "pt", "degree": 0}, {"name": "top", "degree": 2}],
        "pairing": [[0, 1, 1], [1, 0, 1]],
        "monotone_lambda": {"num": 1, "den": 1},
        "spherical_classes": [
            {"name": "0", "c1": 0, "omega": {"num": 0, "den": 1}},
            {"name": "line", "c1": 2, "omega": {"num": 2, "den": 1}}
        ],
        "gw": [{"class": "line", "args": [0, 0, 0], "value": 1}]
    }"#;
    std::fs::write(dir.join("bigs2.json"), custom).unwrap();
    let output = qh()
        .args(["table", "--manifold", "bigs2"])
        .env("QH_CATALOG_DIR", &dir)
        .output()
        .unwrap();
    assert!(output.status.success());
    assert!(stdout(&output).contains("pt * pt = 1*q^-2*t^-2 [top]"));
    std::fs::remove_dir_all(dir).ok();
}
