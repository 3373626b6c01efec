//! Cohomology of strict modules by lattice reduction, by enumeration and,
//! over groups, through ordinary group cohomology.

use schreier_lab::classification::{lambda_cochain, module_of};
use schreier_lab::cohomology::{brute_force_cohomology, categorical_reduction, cohomology};
use schreier_lab::fixtures;

pub fn run_example() -> Vec<String> {
    let mut lines = Vec::new();
    for (name, module) in fixtures::modules() {
        let factors: Vec<Vec<u64>> = (1..=3)
            .map(|n| {
                cohomology(&module, n)
                    .map(|h| h.factors().to_vec())
                    .unwrap_or_default()
            })
            .collect();
        lines.push(format!("{name}: H^1, H^2, H^3 = {factors:?}"));
    }

    let s = fixtures::system("z2-const-z2-twisted");
    let module = module_of(&s).expect("abelian");
    let h3 = cohomology(&module, 3).expect("degree 3");
    let class = h3
        .class_of(&lambda_cochain(&s, &module).expect("cochain"))
        .expect("cocycle");
    lines.push(format!("class of the twisted associator: {class:?}"));

    let brute = brute_force_cohomology(&module, 3).expect("small");
    let bar = categorical_reduction(&module)
        .expect("over a group")
        .cohomology(3)
        .expect("degree 3");
    lines.push(format!(
        "by enumeration {:?}, by the bar complex {:?}",
        brute.factors(),
        bar.factors()
    ));
    lines
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
