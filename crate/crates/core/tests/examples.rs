//! Every example runs and prints what it claims.

#[allow(dead_code)]
#[path = "../examples/catgroup.rs"]
mod catgroup;
#[allow(dead_code)]
#[path = "../examples/classification.rs"]
mod classification;
#[allow(dead_code)]
#[path = "../examples/cohomology.rs"]
mod cohomology;
#[allow(dead_code)]
#[path = "../examples/correspondence.rs"]
mod correspondence;
#[allow(dead_code)]
#[path = "../examples/documents.rs"]
mod documents;
#[allow(dead_code)]
#[path = "../examples/schreier_systems.rs"]
mod schreier_systems;
#[allow(dead_code)]
#[path = "../examples/tables.rs"]
mod tables;

fn has(lines: &[String], needle: &str) -> bool {
    lines.iter().any(|l| l.contains(needle))
}

#[test]
fn tables() {
    let out = tables::run_example();
    assert!(has(&out, "subtraction mod 3: "));
    assert!(has(&out, "|Aut(S3)| = 6"));
    assert!(has(&out, "centre of S3 has 1 element(s)"));
}

#[test]
fn schreier_systems() {
    let out = schreier_systems::run_example();
    assert!(has(&out, "twisted system: valid"));
    assert!(has(&out, "lambda(1,1,1) = 1: cocycle false"));
    assert!(has(&out, "lambda(1,1,1) = 2: cocycle true"));
    assert!(has(&out, "normalization broken at (1,1,0): true"));
}

#[test]
fn correspondence() {
    let out = correspondence::run_example();
    assert_eq!(
        out.iter()
            .filter(|l| l.contains("round trip exact: true"))
            .count(),
        3
    );
    assert!(has(
        &out,
        "fattened: 4 objects in 2 classes, J is an equivalence: true"
    ));
}

#[test]
fn cohomology() {
    let out = cohomology::run_example();
    assert!(has(&out, "z2-const-z2: H^1, H^2, H^3 = [[2], [2], [2]]"));
    assert!(has(&out, "class of the twisted associator: [1]"));
    assert!(has(&out, "by enumeration [2], by the bar complex [2]"));
}

#[test]
fn classification() {
    let out = classification::run_example();
    assert!(has(&out, "constant Z/3 over Z/3: 3 classes"));
    assert!(has(&out, "classes 1 and 2 are equivalent via p = "));
    assert!(has(&out, "classes 0 and 1 are not"));
    assert!(has(&out, "identity type: 2 classes"));
}

#[test]
fn catgroup() {
    let out = catgroup::run_example();
    assert!(has(
        &out,
        "z2-on-z3: action [[0, 1, 2], [0, 2, 1]], associator trivial in group cohomology: true"
    ));
    assert!(has(&out, "z2-const-z2-twisted: action [[0, 1], [0, 1]], associator trivial in group cohomology: false"));
}

#[test]
fn documents() {
    let out = documents::run_example();
    assert!(has(&out, "parses back to the same system: true"));
    assert!(has(
        &out,
        "rejected: invalid group: element 1 has no inverse"
    ));
}
