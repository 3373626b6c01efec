//! A small corpus of systems, morphisms and functors used by the tests, the
//! examples and the self-test.

use std::sync::Arc;

use crate::coefficients::{DMModule, GroupBundle};
use crate::correspondence::{sigma, sigma_morphism};
use crate::error::Result;
use crate::group::{FiniteGroup, GroupHom};
use crate::groupoid::{
    fatten, transport_functor, FinMonoidalGroupoid, MonoidalFunctor, MonoidalNatIso,
};
use crate::monoid::{FiniteMonoid, MonoidHom};
use crate::schreier::{inner_morphism, validate_system, SchreierMorphism, SchreierSystem};

fn arc(m: FiniteMonoid) -> Arc<FiniteMonoid> {
    Arc::new(m)
}

/// `Z/n` acting trivially: constant `Z/k` over the cyclic monoid `Z/n`.
pub fn cyclic_constant(n: usize, k: usize) -> GroupBundle {
    GroupBundle::constant(arc(FiniteMonoid::cyclic(n)), FiniteGroup::cyclic(k))
}

/// Over `{1, e}`: `A_1` trivial, `A_e = Z/2`, identity structure maps.
pub fn idempotent_identity() -> GroupBundle {
    GroupBundle::from_fn(
        arc(FiniteMonoid::idempotent()),
        vec![FiniteGroup::trivial(), FiniteGroup::cyclic(2)],
        |_, b, f| if b == 1 { f } else { 0 },
        |a, _, g| if a == 1 { g } else { 0 },
    )
    .expect("bundle")
}

/// Over `{1, e}`: `A_1` trivial, `A_e = Z/2`, `e_*` the identity and `e^*` zero.
pub fn idempotent_left() -> GroupBundle {
    GroupBundle::from_fn(
        arc(FiniteMonoid::idempotent()),
        vec![FiniteGroup::trivial(), FiniteGroup::cyclic(2)],
        |a, b, f| if b == 1 && (a == 0 || a == 1) { f } else { 0 },
        |a, b, g| if a == 1 && b == 0 { g } else { 0 },
    )
    .expect("bundle")
}

/// Over `{1, e}`: `A_1 = A_e = Z/2`, every structure map the identity.
pub fn idempotent_full() -> GroupBundle {
    GroupBundle::constant(arc(FiniteMonoid::idempotent()), FiniteGroup::cyclic(2))
}

/// `Z/2` acting on `Z/3`: `g_*` is negation, `g^*` the identity.
pub fn z2_on_z3() -> GroupBundle {
    GroupBundle::from_fn(
        arc(FiniteMonoid::cyclic(2)),
        vec![FiniteGroup::cyclic(3); 2],
        |a, _, f| if a == 1 { (3 - f) % 3 } else { f },
        |_, _, g| g,
    )
    .expect("bundle")
}

/// Klein four-group acting trivially on `Z/2`.
pub fn klein_constant() -> GroupBundle {
    let k = FiniteMonoid::from_fn(4, 0, |a, b| a ^ b).expect("Klein monoid");
    GroupBundle::constant(arc(k), FiniteGroup::cyclic(2))
}

/// Over `{1, e}`: `A_1` trivial and `A_e = S_3`, with the identity or the
/// trivial map for `e_*` and `e^*` on `A_e`.
pub fn idempotent_s3(push_id: bool, pull_id: bool) -> GroupBundle {
    GroupBundle::from_fn(
        arc(FiniteMonoid::idempotent()),
        vec![FiniteGroup::trivial(), FiniteGroup::symmetric3()],
        move |a, b, f| match (a, b) {
            (0, _) => f,
            (1, 1) if push_id => f,
            _ => 0,
        },
        move |a, b, g| match (a, b) {
            (_, 0) => g,
            (1, 1) if pull_id => g,
            _ => 0,
        },
    )
    .expect("bundle")
}

fn sign(p: usize) -> usize {
    usize::from(p >= 3)
}

/// `M = {1, a, 0}` with `a a = 0`; `A_1` trivial, `A_a = S_3`, `A_0 = Z/2`,
/// maps into `A_0` given by the sign.
pub fn nilpotent_s3() -> GroupBundle {
    let m = FiniteMonoid::from_fn(3, 0, |x, y| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        _ => 2,
    })
    .expect("monoid");
    let mv = |x: usize, src: usize, f: usize| match (x, src) {
        (0, _) => f,
        (_, 0) => 0,
        (_, 1) => sign(f),
        _ => f,
    };
    GroupBundle::from_fn(
        arc(m),
        vec![
            FiniteGroup::trivial(),
            FiniteGroup::symmetric3(),
            FiniteGroup::cyclic(2),
        ],
        mv,
        move |a, b, g| mv(b, a, g),
    )
    .expect("bundle")
}

/// The first `lambda` in lexicographic order of its non-unit entries that is
/// nontrivial and satisfies every condition.
pub fn first_nontrivial_lambda(bundle: &GroupBundle) -> Option<SchreierSystem> {
    let m = bundle.base().clone();
    let n = m.size();
    let u = m.unit();
    let slots: Vec<(usize, usize)> = (0..n * n * n)
        .filter(|&i| {
            let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
            a != u && b != u && c != u
        })
        .map(|i| {
            let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
            (i, bundle.group(m.mul_all(&[a, b, c])).size())
        })
        .collect();
    let base: Vec<usize> = (0..n * n * n)
        .map(|i| {
            bundle
                .group(m.mul_all(&[i / (n * n), (i / n) % n, i % n]))
                .unit()
        })
        .collect();
    let total: usize = slots.iter().map(|s| s.1).product();
    for code in 1..total.min(1 << 16) {
        let mut lambda = base.clone();
        let mut c = code;
        for &(i, size) in &slots {
            lambda[i] = c % size;
            c /= size;
        }
        let s = SchreierSystem::from_parts(bundle.clone(), lambda).ok()?;
        if validate_system(&s).is_valid() {
            return Some(s);
        }
    }
    None
}

/// Named corpus of valid systems over monoids of order at most 4 with
/// groups of order at most 6.
pub fn corpus() -> Vec<(&'static str, SchreierSystem)> {
    let mut out = vec![
        (
            "trivial",
            SchreierSystem::with_trivial_lambda(GroupBundle::constant(
                arc(FiniteMonoid::trivial()),
                FiniteGroup::trivial(),
            ))
            .expect("system"),
        ),
        (
            "z2-const-z2",
            SchreierSystem::with_trivial_lambda(cyclic_constant(2, 2)).expect("system"),
        ),
        (
            "z2-const-z2-twisted",
            SchreierSystem::from_fn(cyclic_constant(2, 2), |a, b, c| a & b & c).expect("system"),
        ),
        (
            "idempotent-identity",
            SchreierSystem::with_trivial_lambda(idempotent_identity()).expect("system"),
        ),
        (
            "idempotent-left",
            SchreierSystem::from_fn(idempotent_left(), |a, b, c| a & b & c).expect("system"),
        ),
        (
            "z3-const-z3-twisted",
            SchreierSystem::from_fn(cyclic_constant(3, 3), |a, b, c| (a * ((b + c) / 3)) % 3)
                .expect("system"),
        ),
        (
            "z2-const-z4-twisted",
            SchreierSystem::from_fn(cyclic_constant(2, 4), |a, b, c| 2 * (a & b & c))
                .expect("system"),
        ),
        (
            "z2-on-z3",
            SchreierSystem::with_trivial_lambda(z2_on_z3()).expect("system"),
        ),
        (
            "klein-const-z2-twisted",
            SchreierSystem::from_fn(klein_constant(), |a, b, c| (a & 1) & (b >> 1) & (c >> 1))
                .expect("system"),
        ),
        (
            "idempotent-full",
            SchreierSystem::with_trivial_lambda(idempotent_full()).expect("system"),
        ),
        (
            "idempotent-s3-push",
            SchreierSystem::with_trivial_lambda(idempotent_s3(true, false)).expect("system"),
        ),
        (
            "idempotent-s3-pull",
            SchreierSystem::with_trivial_lambda(idempotent_s3(false, true)).expect("system"),
        ),
        (
            "idempotent-s3-trivial",
            SchreierSystem::with_trivial_lambda(idempotent_s3(false, false)).expect("system"),
        ),
    ];
    let nil = nilpotent_s3();
    out.push((
        "nilpotent-s3",
        first_nontrivial_lambda(&nil)
            .unwrap_or_else(|| SchreierSystem::with_trivial_lambda(nil).expect("system")),
    ));
    out
}

pub fn system(name: &str) -> SchreierSystem {
    corpus()
        .into_iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no fixture named {name}"))
        .1
}

/// The distinct strict modules underlying the corpus, named after the first
/// system using each.
pub fn modules() -> Vec<(&'static str, Arc<DMModule>)> {
    let mut out: Vec<(&'static str, Arc<DMModule>)> = Vec::new();
    for (n, s) in corpus() {
        if let Ok(m) = DMModule::new(s.bundle().clone()) {
            if out.iter().all(|(_, x)| x.bundle() != m.bundle()) {
                out.push((n, Arc::new(m)));
            }
        }
    }
    out
}

/// Representative valid morphisms; the last entries are not invertible.
pub fn morphisms() -> Vec<(&'static str, SchreierMorphism)> {
    let mut out = Vec::new();
    for (name, s) in corpus() {
        let s = Arc::new(s);
        out.push((name, SchreierMorphism::identity(s.clone())));
        // An inner morphism with a non-identity family wherever possible.
        let delta: Vec<usize> = (0..s.base().size())
            .map(|a| {
                if a == s.base().unit() {
                    s.group(a).unit()
                } else {
                    s.group(a).elements().last().unwrap_or(0)
                }
            })
            .collect();
        out.push((
            name,
            inner_morphism(s.clone(), &delta).expect("inner morphism"),
        ));
    }
    let s = Arc::new(system("z2-const-z2-twisted"));
    let id = SchreierMorphism::identity(s.clone());
    out.push((
        "phi-shift",
        SchreierMorphism::new(
            s.clone(),
            s.clone(),
            id.p.clone(),
            id.q.clone(),
            vec![0, 0, 0, 1],
        )
        .expect("morphism"),
    ));
    let z3 = Arc::new(SchreierSystem::with_trivial_lambda(cyclic_constant(3, 3)).expect("system"));
    let m3 = arc(FiniteMonoid::cyclic(3));
    out.push((
        "z3-negation",
        SchreierMorphism::new(
            z3.clone(),
            z3.clone(),
            MonoidHom::new(m3.clone(), m3, vec![0, 2, 1]).expect("hom"),
            vec![GroupHom::identity(&FiniteGroup::cyclic(3)); 3],
            vec![0; 9],
        )
        .expect("morphism"),
    ));
    let z4 = Arc::new(system("z2-const-z4-twisted"));
    let z2 = Arc::new(system("z2-const-z2"));
    out.push((
        "reduce-mod-2",
        SchreierMorphism::new(
            z4.clone(),
            z2.clone(),
            MonoidHom::identity(arc(FiniteMonoid::cyclic(2))),
            vec![
                GroupHom {
                    map: vec![0, 1, 0, 1]
                };
                2
            ],
            vec![0; 4],
        )
        .expect("morphism"),
    ));
    out.push((
        "zero-components",
        SchreierMorphism::new(
            z2.clone(),
            z2,
            MonoidHom::identity(arc(FiniteMonoid::cyclic(2))),
            vec![GroupHom { map: vec![0, 0] }; 2],
            vec![0; 4],
        )
        .expect("morphism"),
    ));
    out
}

/// Monoidal groupoids: every corpus `sigma`, plus fattened copies.
pub fn groupoids() -> Result<Vec<(String, Arc<FinMonoidalGroupoid>)>> {
    let mut out = Vec::new();
    for (name, s) in corpus() {
        let g = sigma(&s);
        if s.base().size() > 1 && name.starts_with("z2") {
            out.push((format!("{name}-fat"), Arc::new(fatten(&g, 1, 1)?)));
        }
        if name == "idempotent-s3-push" {
            out.push((format!("{name}-fat-unit"), Arc::new(fatten(&g, 0, 1)?)));
        }
        out.push((name.to_string(), Arc::new(g)));
    }
    Ok(out)
}

/// Functors that are not strictly unitary, obtained from identities and
/// `sigma` images by twisting the unit component with a nontrivial
/// automorphism or by moving the unit image onto an isomorphic copy.
pub fn non_unitary_functors() -> Result<Vec<(String, MonoidalFunctor, MonoidalNatIso)>> {
    let mut out = Vec::new();
    for (name, g) in groupoids()? {
        let id = MonoidalFunctor::identity(g.clone());
        let u = g.unit();
        if let Some(&twist) = g.aut(u).iter().find(|&&f| f != g.id(u)) {
            let theta: Vec<usize> = (0..g.objects())
                .map(|x| if x == u { twist } else { g.id(x) })
                .collect();
            let (f, iso) = transport_functor(&id, &theta)?;
            out.push((format!("{name}/unit-twist"), f, iso));
        }
        if let Some(copy) = (0..g.objects()).find(|&x| x != u && g.is_iso(u, x)) {
            let theta: Vec<usize> = (0..g.objects())
                .map(|x| if x == u { g.hom(u, copy)[0] } else { g.id(x) })
                .collect();
            let (f, iso) = transport_functor(&id, &theta)?;
            out.push((format!("{name}/unit-moved"), f, iso));
        }
    }
    let m = morphisms()
        .into_iter()
        .find(|(n, _)| *n == "phi-shift")
        .map(|(_, m)| m)
        .expect("fixture");
    let f = sigma_morphism(&m);
    let t = f.target.clone();
    let u = t.unit();
    if let Some(&twist) = t.aut(u).iter().find(|&&h| h != t.id(u)) {
        let theta: Vec<usize> = (0..f.source.objects())
            .map(|x| {
                if x == f.source.unit() {
                    twist
                } else {
                    t.id(f.obj[x])
                }
            })
            .collect();
        let (g, iso) = transport_functor(&f, &theta)?;
        out.push(("phi-shift/unit-twist".to_string(), g, iso));
    }
    Ok(out)
}
