//! From systems to monoidal groupoids and back.

use std::sync::Arc;

use schreier_lab::correspondence::{delta, j_equivalence, sigma};
use schreier_lab::fixtures;
use schreier_lab::groupoid::{fatten, is_equivalence, pi0, validate_groupoid};

pub fn run_example() -> Vec<String> {
    let mut lines = Vec::new();
    for name in ["z2-const-z2-twisted", "z2-on-z3", "idempotent-s3-push"] {
        let s = fixtures::system(name);
        let g = sigma(&s);
        let back = delta(&g).expect("skeletal groupoid");
        lines.push(format!(
            "{name}: {} objects, {} morphisms, axioms {}, round trip exact: {}",
            g.objects(),
            g.morphisms(),
            validate_groupoid(&g).is_valid(),
            back.system == s
        ));
    }

    // A non-skeletal groupoid: three isomorphic copies of the generator.
    let g =
        Arc::new(fatten(&sigma(&fixtures::system("z2-const-z2-twisted")), 1, 2).expect("fatten"));
    let d = delta(&g).expect("cleavage");
    let classes = pi0(&g).expect("pi0");
    let j = j_equivalence(&g, &d).expect("J");
    lines.push(format!(
        "fattened: {} objects in {} classes, J is an equivalence: {}",
        g.objects(),
        classes.monoid.size(),
        is_equivalence(&j).is_equivalence()
    ));
    lines
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
