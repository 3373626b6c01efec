use std::collections::HashMap;

use super::{FinMonoidalGroupoid, GroupoidParts};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::monoid::FiniteMonoid;

/// The monoid of isomorphism classes and the class of each object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi0 {
    pub monoid: FiniteMonoid,
    pub class_of: Vec<usize>,
    /// Least object of each class.
    pub least: Vec<usize>,
}

/// Classes are labelled in order of their least object.
pub fn pi0(g: &FinMonoidalGroupoid) -> Result<Pi0> {
    let n = g.objects();
    let mut class_of = vec![usize::MAX; n];
    let mut least = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = least.len();
        least.push(x);
        for y in x..n {
            if g.is_iso(x, y) {
                class_of[y] = c;
            }
        }
    }
    let k = least.len();
    let table: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| class_of[g.tensor_obj(least[a], least[b])])
                .collect()
        })
        .collect();
    for x in 0..n {
        for y in 0..n {
            if class_of[g.tensor_obj(x, y)] != table[class_of[x]][class_of[y]] {
                return Err(Error::Invalid {
                    what: "monoidal groupoid",
                    report: format!(
                        "tensor of objects {x} and {y} is not compatible with isomorphism"
                    ),
                });
            }
        }
    }
    let monoid = FiniteMonoid::new(table, class_of[g.unit()])?;
    Ok(Pi0 {
        monoid,
        class_of,
        least,
    })
}

/// The full subgroupoid on objects whose class is invertible.
pub fn picard(g: &FinMonoidalGroupoid) -> Result<FinMonoidalGroupoid> {
    let p = pi0(g)?;
    let objects: Vec<usize> = (0..g.objects())
        .filter(|&x| p.monoid.inverse_of(p.class_of[x]).is_some())
        .collect();
    FinMonoidalGroupoid::new(g.full_subgroupoid(&objects)?.into_parts())
}

/// Every object has a tensor inverse up to isomorphism.
pub fn is_categorical_group(g: &FinMonoidalGroupoid) -> bool {
    let u = g.unit();
    (0..g.objects()).all(|x| {
        (0..g.objects()).any(|y| g.is_iso(g.tensor_obj(x, y), u) && g.is_iso(g.tensor_obj(y, x), u))
    })
}

/// `Aut(x)` as a table group; element `i` is the `i`-th entry of `g.aut(x)`.
pub fn aut_group(g: &FinMonoidalGroupoid, x: usize) -> FiniteGroup {
    let aut = g.aut(x);
    let pos = |f: usize| aut.iter().position(|&h| h == f).expect("automorphism");
    FiniteGroup::from_fn(aut.len(), pos(g.id(x)), |i, j| {
        pos(g.compose(aut[i], aut[j]))
    })
    .expect("automorphisms form a group")
}

/// Whether `Aut(x)` is commutative.
pub fn aut_is_abelian(g: &FinMonoidalGroupoid, x: usize) -> bool {
    let aut = g.aut(x);
    aut.iter()
        .all(|&f| aut.iter().all(|&h| g.compose(f, h) == g.compose(h, f)))
}

/// Adds `copies` objects isomorphic to `x`. Every new hom-set is a copy of the
/// corresponding hom-set between the underlying old objects; tensor and
/// constraints are transported from there.
pub fn fatten(g: &FinMonoidalGroupoid, x: usize, copies: usize) -> Result<FinMonoidalGroupoid> {
    if x >= g.objects() {
        return Err(Error::OutOfRange {
            location: "fatten object".into(),
            value: x,
            size: g.objects(),
        });
    }
    let n0 = g.objects();
    let n = n0 + copies;
    let under = |u: usize| if u < n0 { u } else { x };
    // Old morphisms keep their ids; new ones are keyed by (source, target, old).
    let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut keys: Vec<(usize, usize, usize)> = Vec::new();
    for f in 0..g.morphisms() {
        let k = (g.src(f), g.tgt(f), f);
        ids.insert(k, keys.len());
        keys.push(k);
    }
    for s in 0..n {
        for t in 0..n {
            if s < n0 && t < n0 {
                continue;
            }
            for &f in g.hom(under(s), under(t)) {
                ids.insert((s, t, f), keys.len());
                keys.push((s, t, f));
            }
        }
    }
    let m = keys.len();
    let id_of = |s: usize, t: usize, f: usize| ids[&(s, t, f)];
    let mut compose = vec![None; m * m];
    let mut tensor_mor = vec![0; m * m];
    for (i, &(s1, t1, f1)) in keys.iter().enumerate() {
        for (j, &(s2, t2, f2)) in keys.iter().enumerate() {
            if s1 == t2 {
                compose[i * m + j] = Some(id_of(s2, t1, g.compose(f1, f2)));
            }
            tensor_mor[i * m + j] = g.tensor(f1, f2);
        }
    }
    let mut tensor_obj = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            tensor_obj.push(g.tensor_obj(under(s), under(t)));
        }
    }
    let mut assoc = Vec::with_capacity(n * n * n);
    for s in 0..n {
        for t in 0..n {
            for w in 0..n {
                assoc.push(g.assoc(under(s), under(t), under(w)));
            }
        }
    }
    let u = g.unit();
    let parts = GroupoidParts {
        objects: n,
        source: keys.iter().map(|k| k.0).collect(),
        target: keys.iter().map(|k| k.1).collect(),
        identity: (0..n).map(|s| id_of(s, s, g.id(under(s)))).collect(),
        inverse: keys
            .iter()
            .map(|&(s, t, f)| id_of(t, s, g.inv(f)))
            .collect(),
        compose,
        tensor_obj,
        tensor_mor,
        unit: u,
        assoc,
        lunit: (0..n)
            .map(|s| id_of(g.tensor_obj(u, under(s)), s, g.lunit(under(s))))
            .collect(),
        runit: (0..n)
            .map(|s| id_of(g.tensor_obj(under(s), u), s, g.runit(under(s))))
            .collect(),
    };
    FinMonoidalGroupoid::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::sigma;
    use crate::fixtures;
    use crate::groupoid::validate_groupoid;

    #[test]
    fn pi0_of_sigma_is_the_base() {
        for (name, s) in fixtures::corpus() {
            let g = sigma(&s);
            let p = pi0(&g).unwrap();
            assert_eq!(p.monoid, *s.base(), "{name}");
            assert_eq!(p.least, (0..s.base().size()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn picard_keeps_invertible_classes() {
        let g = sigma(&fixtures::system("idempotent-s3-push"));
        let pic = picard(&g).unwrap();
        assert_eq!(pic.objects(), 1);
        assert!(is_categorical_group(&pic));
        assert!(!is_categorical_group(&g));
        let z2 = sigma(&fixtures::system("z2-const-z2-twisted"));
        assert_eq!(picard(&z2).unwrap(), z2);
        assert!(is_categorical_group(&z2));
    }

    #[test]
    fn invertible_objects_have_abelian_automorphisms() {
        for (name, g) in fixtures::groupoids().unwrap() {
            let p = pi0(&g).unwrap();
            for x in 0..g.objects() {
                if p.monoid.inverse_of(p.class_of[x]).is_some() {
                    assert!(aut_is_abelian(&g, x), "{name} {x}");
                }
            }
        }
        let g = sigma(&fixtures::system("idempotent-s3-push"));
        assert!(!aut_is_abelian(&g, 1));
    }

    #[test]
    fn fatten_is_valid() {
        let g = sigma(&fixtures::system("z3-const-z3-twisted"));
        for x in 0..g.objects() {
            let fat = fatten(&g, x, 2).unwrap();
            assert!(validate_groupoid(&fat).is_valid());
            for c in g.objects()..fat.objects() {
                assert!(fat.is_iso(x, c));
                assert_eq!(fat.aut(c).len(), g.aut(x).len());
            }
            // Old morphisms keep their ids.
            for f in 0..g.morphisms() {
                assert_eq!(fat.src(f), g.src(f));
                assert_eq!(fat.tgt(f), g.tgt(f));
            }
        }
    }
}
