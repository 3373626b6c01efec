//! The documents under `data/` are the serialized fixtures. Run with
//! `UPDATE_DATA=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use schreier_lab::fixtures;
use schreier_lab::io::{self, Object};
use schreier_lab::monoid::FiniteMonoid;
use schreier_lab::schreier::SchreierSystem;

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// The module document for the CLI example omits its base, which is given separately.
fn module_without_base() -> String {
    let text = io::serialize(&Object::Module(fixtures::cyclic_constant(2, 2)));
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["payload"].as_object_mut().unwrap().remove("base");
    let mut out = serde_json::to_string_pretty(&v).unwrap();
    out.push('\n');
    out
}

fn expected() -> Vec<(PathBuf, String)> {
    let d = data();
    let mut out = vec![
        (
            d.join("z2.json"),
            io::serialize(&Object::Monoid(Arc::new(FiniteMonoid::cyclic(2)))),
        ),
        (d.join("constz2.json"), module_without_base()),
    ];
    for (name, s) in fixtures::corpus() {
        out.push((
            d.join(format!("systems/{name}.json")),
            io::serialize(&Object::System(Arc::new(s))),
        ));
    }
    for (name, m) in fixtures::morphisms() {
        if [
            "phi-shift",
            "z3-negation",
            "reduce-mod-2",
            "zero-components",
        ]
        .contains(&name)
        {
            out.push((
                d.join(format!("morphisms/{name}.json")),
                io::serialize(&Object::Morphism(m)),
            ));
        }
    }
    for (name, g) in fixtures::groupoids().unwrap() {
        if name.ends_with("-fat") || name.ends_with("-fat-unit") {
            out.push((
                d.join(format!("groupoids/{name}.json")),
                io::serialize(&Object::Groupoid(g)),
            ));
        }
    }
    let s = fixtures::system("z2-const-z2");
    let mut lambda = s.lambda_table().to_vec();
    lambda[6] = 1;
    let bad = SchreierSystem::from_parts(s.bundle().clone(), lambda).unwrap();
    out.push((
        d.join("negative/lambda-not-normalized.json"),
        io::serialize(&Object::System(Arc::new(bad))),
    ));
    out
}

#[test]
fn data_files_match_fixtures() {
    let update = std::env::var_os("UPDATE_DATA").is_some();
    let mut stale = Vec::new();
    for (path, text) in expected() {
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &text).unwrap();
        } else if std::fs::read_to_string(&path).ok().as_deref() != Some(text.as_str()) {
            stale.push(path);
        }
    }
    assert!(
        stale.is_empty(),
        "stale data files (rerun with UPDATE_DATA=1): {stale:?}"
    );
}

#[test]
fn documents_validate_against_the_schema() {
    let schema: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/document.schema.json"),
        )
        .unwrap(),
    )
    .unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for (path, text) in expected() {
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(validator.is_valid(&v), "{}", path.display());
    }
    let wrong: serde_json::Value = serde_json::from_str(
        r#"{"version": "1", "kind": "system", "payload": {"table": [[0]], "unit": 0}}"#,
    )
    .unwrap();
    assert!(!validator.is_valid(&wrong));
}
