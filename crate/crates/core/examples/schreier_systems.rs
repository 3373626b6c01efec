//! Building Schreier systems and reading validation reports.

use schreier_lab::fixtures;
use schreier_lab::schreier::{validate_system, SchreierCondition, SchreierSystem};

pub fn run_example() -> Vec<String> {
    let mut lines = Vec::new();
    // Constant Z/2 over Z/2 with the associator nontrivial only at (1, 1, 1).
    let bundle = fixtures::cyclic_constant(2, 2);
    let twisted = SchreierSystem::new(bundle.clone(), vec![0, 0, 0, 0, 0, 0, 0, 1]).expect("valid");
    lines.push(format!("twisted system: {}", validate_system(&twisted)));

    // Over Z/2 with values in Z/4, only even values at (1, 1, 1) are cocycles.
    let z4 = fixtures::cyclic_constant(2, 4);
    for v in 0..4 {
        let s =
            SchreierSystem::from_parts(z4.clone(), vec![0, 0, 0, 0, 0, 0, 0, v]).expect("shape");
        let r = validate_system(&s);
        lines.push(format!(
            "lambda(1,1,1) = {v}: cocycle {}",
            !r.cites(&SchreierCondition::Cocycle)
        ));
    }

    let broken = twisted.with_lambda_entry(1, 1, 0, 1).expect("shape");
    let r = validate_system(&broken);
    lines.push(format!(
        "normalization broken at (1,1,0): {}",
        r.cites_at(&SchreierCondition::Normalized, &[1, 1, 0])
    ));

    let nil = fixtures::system("nilpotent-s3");
    lines.push(format!(
        "non-abelian fixture over a monoid of order {}: {}",
        nil.base().size(),
        validate_system(&nil)
    ));
    lines
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
