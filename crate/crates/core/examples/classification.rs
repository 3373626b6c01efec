//! Deciding equivalence, listing the classes over a module and counting functors.

use std::sync::Arc;

use schreier_lab::classification::{
    are_equivalent, classify_fiber, count_functor_classes, module_of, Decision,
};
use schreier_lab::correspondence::sigma;
use schreier_lab::fixtures;
use schreier_lab::group::GroupHom;
use schreier_lab::monoid::MonoidHom;

pub fn run_example() -> Vec<String> {
    let mut lines = Vec::new();
    let z3 = module_of(&fixtures::system("z3-const-z3-twisted")).expect("abelian");
    let fiber = classify_fiber(&z3).expect("small");
    lines.push(format!("constant Z/3 over Z/3: {} classes", fiber.len()));

    // Classes 1 and 2 are swapped by negating the coefficients.
    let g1 = Arc::new(fiber[1].groupoid.clone());
    let g2 = Arc::new(fiber[2].groupoid.clone());
    match are_equivalent(&g1, &g2, 1_000_000).expect("within budget") {
        Decision::Yes(c) => {
            let q: Vec<&Vec<usize>> = c.morphism.q.iter().map(|h| &h.map).collect();
            lines.push(format!(
                "classes 1 and 2 are equivalent via p = {:?}, q = {q:?}",
                c.morphism.p.map
            ));
        }
        Decision::No(_) => lines.push("classes 1 and 2 are not equivalent".into()),
    }
    let g0 = Arc::new(fiber[0].groupoid.clone());
    if let Decision::No(counts) = are_equivalent(&g0, &g1, 1_000_000).expect("within budget") {
        lines.push(format!(
            "classes 0 and 1 are not: {} monoid and {} module isomorphisms tried",
            counts.monoid_isos, counts.module_isos
        ));
    }

    let s = fixtures::system("z2-const-z2");
    let g = sigma(&s);
    let p = MonoidHom::identity(s.bundle().base().clone());
    let q: Vec<GroupHom> = s.bundle().groups().iter().map(GroupHom::identity).collect();
    let classes = count_functor_classes(&g, &g, &p, &q, true)
        .expect("abelian")
        .expect("same class");
    lines.push(format!(
        "self-functors of constant Z/2 of identity type: {} classes",
        classes.count
    ));
    lines
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
