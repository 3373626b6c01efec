//! Systems over groups reduce to a group acting on one abelian group.

use std::sync::Arc;

use schreier_lab::classification::{action_table, reduce_catgroup, reduced_class_is_trivial};
use schreier_lab::fixtures;

pub fn run_example() -> Vec<String> {
    let mut lines = Vec::new();
    for name in ["z2-on-z3", "z2-const-z2-twisted", "klein-const-z2-twisted"] {
        let s = Arc::new(fixtures::system(name));
        let r = reduce_catgroup(&s).expect("base is a group");
        let action: Vec<Vec<usize>> = action_table(&r).into_iter().map(|h| h.map).collect();
        lines.push(format!(
            "{name}: action {action:?}, associator trivial in group cohomology: {}",
            reduced_class_is_trivial(&r).expect("degree 3")
        ));
    }
    lines
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
