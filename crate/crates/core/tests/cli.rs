//! End-to-end runs of the binary on the shipped documents.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schreier-lab"))
        .args(args)
        .env_remove("SCHREIER_LAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report_validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/report.schema.json");
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs with `--json` and checks the report against the published schema.
fn run_json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    let validator = report_validator();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}\n{v}");
    (v, o.status.code().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn validate_valid_and_invalid() {
    let o = run(&["validate", &data("systems/z2-const-z2-twisted.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "system: valid\n");
    let (v, code) = run_json(&["validate", &data("negative/lambda-not-normalized.json")]);
    assert_eq!(code, 3);
    assert_eq!(v["valid"], false);
    assert!(v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["condition"] == "Normalized"));
    let (v, code) = run_json(&["validate", &data("negative/malformed-table.json")]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["class"], "parse");
    let (v, code) = run_json(&["validate", &data("morphisms/reduce-mod-2.json")]);
    assert_eq!((code, v["valid"].as_bool()), (0, Some(true)));
}

#[test]
fn loading_an_invalid_system_is_a_validation_error() {
    let o = run(&["roundtrip", &data("negative/lambda-not-normalized.json")]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(
        err.contains("validation") && err.contains("Normalized"),
        "{err}"
    );
    let o = run(&[
        "--no-validate",
        "sigma",
        &data("negative/lambda-not-normalized.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("axioms FAIL"));
}

#[test]
fn cohomology_of_constant_z2() {
    let base = data("z2.json");
    let module = data("constz2.json");
    for n in 1..=3 {
        let (v, code) = run_json(&[
            "cohomology",
            "--base",
            &base,
            "--module",
            &module,
            "--degree",
            &n.to_string(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(v["factors"], serde_json::json!([2]));
    }
    let o = run(&[
        "cohomology",
        "--base",
        &base,
        "--module",
        &module,
        "--degree",
        "3",
    ]);
    assert_eq!(stdout(&o), "H^3: invariant factors [2], order 2\n");
    let (v, code) = run_json(&[
        "cohomology",
        "--module",
        &data("systems/z3-const-z3-twisted.json"),
        "--degree",
        "3",
    ]);
    assert_eq!((code, v["factors"].clone()), (0, serde_json::json!([3])));
}

#[test]
fn roundtrip_prints_pass() {
    for entry in std::fs::read_dir(data("systems")).unwrap() {
        let path = entry.unwrap().path().display().to_string();
        let o = run(&["roundtrip", &path]);
        assert_eq!(stdout(&o), "ΔΣ = id: PASS\n", "{path}");
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn sigma_then_delta() {
    let g = scratch("twisted-groupoid.json");
    let s = scratch("twisted-system.json");
    let g_str = g.display().to_string();
    let s_str = s.display().to_string();
    let (v, code) = run_json(&[
        "sigma",
        &data("systems/z2-const-z2-twisted.json"),
        "--out",
        &g_str,
    ]);
    assert_eq!(
        (code, v["objects"].as_u64(), v["valid"].as_bool()),
        (0, Some(2), Some(true))
    );
    let (v, code) = run_json(&["delta", &g_str, "--out", &s_str]);
    assert_eq!((code, v["classes"].as_u64()), (0, Some(2)));
    assert_eq!(
        std::fs::read_to_string(&s).unwrap(),
        std::fs::read_to_string(data("systems/z2-const-z2-twisted.json")).unwrap()
    );
    let (v, _) = run_json(&["delta", &data("groupoids/z2-const-z2-twisted-fat.json")]);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 2);
}

#[test]
fn equivalence_decisions() {
    let plain = data("systems/z2-const-z2.json");
    let twisted = data("systems/z2-const-z2-twisted.json");
    let fat = data("groupoids/z2-const-z2-twisted-fat.json");
    let (v, code) = run_json(&["equivalent", &twisted, &fat]);
    assert_eq!((code, v["equivalent"].as_bool()), (0, Some(true)));
    let (v, code) = run_json(&["equivalent", &plain, &twisted]);
    assert_eq!((code, v["equivalent"].as_bool()), (1, Some(false)));
    assert_eq!(v["module_isos"], 1);
    let o = run(&["equivalent", &plain, &twisted]);
    assert!(stdout(&o).starts_with("NO"));
    let klein = data("systems/klein-const-z2-twisted.json");
    let (v, code) = run_json(&["--budget", "0", "equivalent", &klein, &klein]);
    assert_eq!((code, v["error"]["class"].as_str()), (4, Some("budget")));
    let o = Command::new(env!("CARGO_BIN_EXE_schreier-lab"))
        .args(["equivalent", &klein, &klein])
        .env("SCHREIER_LAB_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn classify_writes_representatives() {
    let dir = scratch("classes");
    let (v, code) = run_json(&[
        "classify",
        "--base",
        &data("z2.json"),
        "--module",
        &data("constz2.json"),
        "--out-dir",
        &dir.display().to_string(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    let (v, code) = run_json(&[
        "equivalent",
        &dir.join("class-0.json").display().to_string(),
        &dir.join("class-1.json").display().to_string(),
    ]);
    assert_eq!((code, v["equivalent"].as_bool()), (1, Some(false)));
}

#[test]
fn count_functors() {
    let plain = data("systems/z2-const-z2.json");
    let twisted = data("systems/z2-const-z2-twisted.json");
    let (v, code) = run_json(&["count-functors", &plain, &plain]);
    assert_eq!((code, v["count"].as_str()), (0, Some("2")));
    let (v, _) = run_json(&["count-functors", &plain, &twisted]);
    assert_eq!(
        (v["exists"].as_bool(), v["count"].is_null()),
        (Some(false), true)
    );
    let (v, _) = run_json(&[
        "count-functors",
        &plain,
        &plain,
        "--p",
        "0,1",
        "--q",
        "[[0,0],[0,0]]",
    ]);
    assert_eq!(v["count"].as_str(), Some("2"));
    let (v, code) = run_json(&["count-functors", &plain, &plain, "--p", "0,0,1"]);
    assert_eq!(
        (code, v["error"]["class"].as_str()),
        (5, Some("computation"))
    );
}

#[test]
fn reduce_catgroup() {
    let (v, code) = run_json(&["reduce-catgroup", &data("systems/z2-on-z3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["action"], serde_json::json!([[0, 1, 2], [0, 2, 1]]));
    assert_eq!(v["class_trivial"], true);
    let (v, _) = run_json(&["reduce-catgroup", &data("systems/z2-const-z2-twisted.json")]);
    assert_eq!(
        (v["class_trivial"].as_bool(), v["h3"].clone()),
        (Some(false), serde_json::json!([2]))
    );
    let (v, code) = run_json(&["reduce-catgroup", &data("systems/idempotent-full.json")]);
    assert_eq!(
        (code, v["error"]["class"].as_str()),
        (5, Some("computation"))
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--degree", "3"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--json",
        "--jobs",
        "2",
        "classify",
        "--module",
        &data("systems/klein-const-z2-twisted.json"),
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let seeded: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "--json",
        "--seed",
        "7",
        "roundtrip",
        &data("systems/trivial.json"),
    ])))
    .unwrap();
    assert_eq!(seeded["seed"], 7);
}

#[test]
fn selftest_single_criterion() {
    let (v, code) = run_json(&["selftest", "--criterion", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["criteria"][0]["holds"], true);
    assert_eq!(
        run(&["selftest", "--criterion", "11"]).status.code(),
        Some(2)
    );
}
