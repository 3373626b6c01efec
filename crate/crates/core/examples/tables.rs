//! Monoids, groups and homomorphisms as multiplication tables.

use schreier_lab::group::{group_isomorphisms, FiniteGroup};
use schreier_lab::monoid::{monoid_isomorphisms, validate_monoid, FiniteMonoid, MonoidCondition};

pub fn run_example() -> Vec<String> {
    let mut lines = Vec::new();
    let z2 = FiniteMonoid::cyclic(2);
    let e = FiniteMonoid::idempotent();
    let product = z2.product(&e);
    lines.push(format!(
        "Z/2 x {{1, e}} has {} elements, unit {}",
        product.size(),
        product.unit()
    ));
    lines.push(format!(
        "automorphisms of Z/2 x {{1, e}}: {}",
        monoid_isomorphisms(&product, &product).len()
    ));

    // Subtraction is not associative; the validator reports every failing triple.
    let report =
        validate_monoid(&[vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]], 0).expect("square table");
    let assoc = report
        .violations()
        .iter()
        .filter(|v| v.condition == MonoidCondition::Associativity)
        .count();
    lines.push(format!(
        "subtraction mod 3: {assoc} non-associative triples"
    ));

    let s3 = FiniteGroup::symmetric3();
    lines.push(format!(
        "|Aut(S3)| = {}",
        group_isomorphisms(&s3, &s3).len()
    ));
    lines.push(format!("centre of S3 has {} element(s)", s3.center().len()));
    lines
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
