//! End-to-end runs of the installed binary: output shapes, exact JSON
//! values, and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tckit::io::{category_to_string, scalar_from_json};
use tckit::{FieldSpec, Scalar};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tckit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is text")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_str(&stdout_of(out)).expect("stdout is one JSON document")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn gdim_of_the_golden_table_is_exact_in_json() {
    let out = run(&["gdim", "--builtin", "fibonacci", "--json"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["name"], "fibonacci");
    let dim = scalar_from_json(&doc["global_dimension"], "gdim").unwrap();
    let expected = &(&Scalar::from_int(FieldSpec::Cyclotomic(5), 3) + &Scalar::zeta_pow(5, 1))
        + &Scalar::zeta_pow(5, 4);
    assert_eq!(dim, expected);
}

#[test]
fn human_mode_prints_the_approximation() {
    let out = run(&["gdim", "--builtin", "fibonacci"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("approx 3.618034"), "missing approximation in {text:?}");
}

#[test]
fn separability_in_own_characteristic_is_false_with_success_exit() {
    let out = run(&["separable", "--builtin", "vec_z3", "--field", "prime:3"]);
    assert_eq!(code(&out), 0, "a negative verdict is still a successful run");
    assert_eq!(stdout_of(&out).lines().next(), Some("false"));

    let out = run(&["separable", "--builtin", "vec_z3", "--field", "prime:3", "--json"]);
    let doc = json_of(&out);
    assert_eq!(doc["separable"], Value::Bool(false));
    assert!(scalar_from_json(&doc["global_dimension"], "dim").unwrap().is_zero());

    let out = run(&["separable", "--builtin", "vec_z3"]);
    assert_eq!(stdout_of(&out).lines().next(), Some("true"));
}

#[test]
fn the_two_pivotals_of_the_order_two_theory_are_listed() {
    let out = run(&["pivotal", "--builtin", "vec_z2"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("2 pivotal structures"), "got {text:?}");
    assert!(text.contains("g1: 1"));
    assert!(text.contains("g1: -1"));

    let doc = json_of(&run(&["pivotal", "--builtin", "vec_z2", "--json"]));
    assert_eq!(doc["count"], 2);
}

#[test]
fn window_and_gdim_agree_through_the_interface() {
    for name in ["vec_z6", "ising"] {
        let w = json_of(&run(&["window", "--builtin", name, "--json"]));
        let d = json_of(&run(&["gdim", "--builtin", name, "--json"]));
        assert_eq!(w["window_element"], d["global_dimension"], "{name}");
    }
}

#[test]
fn export_round_trips_through_validate_and_gdim() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fib.json");
    let out = run(&["builtin", "export", "fibonacci"]);
    assert_eq!(code(&out), 0);
    std::fs::write(&path, out.stdout).unwrap();

    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout_of(&out).contains("pentagon verified"));

    let from_file = json_of(&run(&["gdim", path.to_str().unwrap(), "--json"]));
    let from_builtin = json_of(&run(&["gdim", "--builtin", "fibonacci", "--json"]));
    assert_eq!(from_file["global_dimension"], from_builtin["global_dimension"]);
}

fn write_tampered_table(path: &Path) {
    let table = tckit::examples::builtin("fibonacci", None).unwrap();
    let mut doc: Value =
        serde_json::from_str(&category_to_string("fibonacci", &table)).unwrap();
    let entries = doc["F"].as_array_mut().unwrap();
    let entry = entries
        .iter_mut()
        .find(|e| {
            e["a"] == "tau" && e["b"] == "tau" && e["c"] == "tau" && e["e"] == "1" && e["f"] == "1"
        })
        .expect("the straight snake entry exists");
    entry["value"] = serde_json::json!({ "zeta": 5, "coeffs": ["7"] });
    std::fs::write(path, doc.to_string()).unwrap();
}

#[test]
fn a_tampered_file_fails_validation_with_the_domain_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    write_tampered_table(&path);

    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("pentagon"), "unexpected message {err:?}");

    // the escape hatch loads it anyway
    let out = run(&["validate", path.to_str().unwrap(), "--skip-pentagon"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn malformed_documents_exit_with_the_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");

    std::fs::write(&path, "{ this is not json").unwrap();
    assert_eq!(code(&run(&["validate", path.to_str().unwrap()])), 2);

    let table = tckit::examples::builtin("vec_z2", None).unwrap();
    let mut doc: Value = serde_json::from_str(&category_to_string("vec_z2", &table)).unwrap();
    doc["F"][0]["value"] = Value::String("one half".into());
    std::fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(code(&run(&["validate", path.to_str().unwrap()])), 2);
}

#[test]
fn usage_errors_exit_with_code_two() {
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["gdim"])), 2);
    assert_eq!(code(&run(&["gdim", "--builtin", "no_such_table"])), 2);
    assert_eq!(code(&run(&["gdim", "--builtin", "vec_z2", "--field", "sevenadic:7"])), 2);
    // a fixed-field builtin rejects the override as a domain error
    assert_eq!(code(&run(&["gdim", "--builtin", "fibonacci", "--field", "rational"])), 1);
}

#[test]
fn circle_invariant_reads_polygons_and_sides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diamond.poly");
    std::fs::write(&path, "# one positive loop\n10 0\n0 10\n-10 0\n0 -10\n").unwrap();

    let out = run(&["circle-invariant", path.to_str().unwrap(), "--side", "left"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "1");

    let out = run(&["circle-invariant", path.to_str().unwrap(), "--side", "right", "--json"]);
    assert_eq!(json_of(&out)["invariant"], -1);

    std::fs::write(&path, "0 0\n1 1\n").unwrap();
    assert_eq!(code(&run(&["circle-invariant", path.to_str().unwrap(), "--side", "left"])), 1);

    std::fs::write(&path, "0 zero\n1 1\n2 0\n").unwrap();
    assert_eq!(code(&run(&["circle-invariant", path.to_str().unwrap(), "--side", "left"])), 2);
}

#[test]
fn word_files_prove_goals_and_respect_the_budget_variable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("belt.words");
    let roundtrip = "comp(comp(side(id(evL), v2R), side(v1, id(evR))), \
                     comp(side(id(evR), u1), side(u2R, id(evL)))) => id(evL)";
    std::fs::write(&path, format!("# belt trick\n{roundtrip}\n")).unwrap();

    let out = run(&["bordism", "check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout_of(&out).contains("proved in"));

    let out = bin()
        .args(["bordism", "check", path.to_str().unwrap()])
        .env("TCKIT_REWRITE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1, "a starved search is a domain failure");

    let out = bin()
        .args(["bordism", "check", path.to_str().unwrap()])
        .env("TCKIT_REWRITE_BUDGET", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);

    std::fs::write(&path, "comp(1\n").unwrap();
    assert_eq!(code(&run(&["bordism", "check", path.to_str().unwrap()])), 2);
}

#[test]
fn builtin_list_names_the_whole_corpus() {
    let out = run(&["builtin", "list"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    for name in tckit::examples::BUILTIN_NAMES {
        assert!(text.lines().any(|l| l == name), "missing {name}");
    }
}
