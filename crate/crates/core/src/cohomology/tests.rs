use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::coefficients::GroupBundle;
use crate::fixtures;
use crate::group::FiniteGroup;
use crate::monoid::FiniteMonoid;

fn module(bundle: GroupBundle) -> Arc<DMModule> {
    Arc::new(DMModule::new(bundle).unwrap())
}

fn z2() -> Arc<DMModule> {
    module(fixtures::cyclic_constant(2, 2))
}

fn diagonal_entries(map: &CochainMap) -> Vec<u64> {
    let k = map.matrix.rows().min(map.matrix.cols());
    (0..k)
        .map(|i| map.matrix.get(i, i).to_u64().unwrap())
        .collect()
}

#[test]
fn cochain_groups_by_hand() {
    let m = z2();
    let c0 = cochain_group(&m, 0).unwrap();
    assert_eq!(c0.tuples(), &[Vec::<usize>::new()]);
    assert_eq!(c0.group().factors(), &[2]);
    let c3 = cochain_group(&m, 3).unwrap();
    assert_eq!(c3.tuples(), &[vec![1, 1, 1]]);
    assert_eq!(c3.group().factors(), &[2]);
    let e = module(fixtures::idempotent_identity());
    for n in 1..=4 {
        let c = cochain_group(&e, n).unwrap();
        assert_eq!(c.tuples(), &[vec![1; n]]);
        assert_eq!(c.moduli(), &[2]);
    }
    assert!(cochain_group(&e, 0).unwrap().group().is_trivial());
    assert!(matches!(
        cochain_group(&m, 6),
        Err(Error::DegreeTooLarge { .. })
    ));
    assert!(matches!(
        coboundary_matrix(&m, 5),
        Err(Error::DegreeTooLarge { .. })
    ));
}

#[test]
fn constant_z2_differentials_vanish() {
    let m = z2();
    for n in 0..=4 {
        assert!(coboundary_matrix(&m, n).unwrap().is_zero(), "degree {n}");
    }
    // (d phi)(g, g, g) = phi(g, g) - 0 + 0 - phi(g, g).
    let phi = Cochain {
        degree: 2,
        values: vec![1],
    };
    assert_eq!(coboundary(&m, &phi).unwrap().values, vec![0]);
}

#[test]
fn idempotent_differentials_alternate() {
    let m = module(fixtures::idempotent_identity());
    for n in 1..=4 {
        let d = coboundary_matrix(&m, n).unwrap();
        assert_eq!(
            diagonal_entries(&d),
            vec![u64::from(n % 2 == 1)],
            "degree {n}"
        );
    }
    let left = module(fixtures::idempotent_left());
    let expect = [0, 1, 0, 1];
    for n in 1..=4 {
        let d = coboundary_matrix(&left, n).unwrap();
        assert_eq!(diagonal_entries(&d), vec![expect[n - 1]], "degree {n}");
    }
}

#[test]
fn hand_computed_cohomology() {
    for n in 1..=3 {
        assert_eq!(cohomology(&z2(), n).unwrap().factors(), &[2]);
        assert!(cohomology(&module(fixtures::idempotent_identity()), n)
            .unwrap()
            .group()
            .is_trivial());
    }
    let trivial = module(GroupBundle::constant(
        Arc::new(FiniteMonoid::cyclic(3)),
        FiniteGroup::trivial(),
    ));
    for n in 1..=3 {
        assert!(cohomology(&trivial, n).unwrap().group().is_trivial());
        assert!(brute_force_cohomology(&trivial, n).unwrap().is_trivial());
    }
    assert!(cohomology(&z2(), 0).is_err());
}

#[test]
fn differentials_square_to_zero() {
    for (name, m) in fixtures::modules() {
        for n in 0..=3 {
            let d1 = coboundary_matrix(&m, n).unwrap();
            let d2 = coboundary_matrix(&m, n + 1).unwrap();
            assert!(d2.compose(&d1).unwrap().is_zero(), "{name} degree {n}");
        }
    }
}

#[test]
fn matrix_agrees_with_elementwise_formula() {
    for (name, m) in fixtures::modules() {
        for n in 0..=3 {
            let d = coboundary_matrix(&m, n).unwrap();
            let space = &d.source;
            for j in 0..space.dim() {
                let mut e = vec![0; space.dim()];
                e[j] = 1;
                let c = space.cochain(&e);
                let direct = coboundary(&m, &c).unwrap();
                assert_eq!(
                    d.apply_cochain(&c),
                    direct,
                    "{name} degree {n} generator {j}"
                );
            }
        }
    }
}

#[test]
fn lattice_route_agrees_with_enumeration() {
    for (name, m) in fixtures::modules() {
        for n in 1..=3 {
            match brute_force_cohomology(&m, n) {
                Ok(b) => assert_eq!(cohomology(&m, n).unwrap().group(), &b, "{name} degree {n}"),
                Err(Error::TooLarge(_)) => {}
                Err(e) => panic!("{name}: {e}"),
            }
        }
    }
}

#[test]
fn classes_and_representatives() {
    for (name, m) in fixtures::modules() {
        for n in 1..=3 {
            let h = cohomology(&m, n).unwrap();
            let prev = h.previous_space().clone();
            for x in h.group().elements() {
                let z = h.representative_of(&x).unwrap();
                assert_eq!(h.class_of(&z).unwrap(), x, "{name} degree {n}");
                // Translating by a coboundary keeps the class.
                for j in 0..prev.dim().min(3) {
                    let mut e = vec![0; prev.dim()];
                    e[j] = 1;
                    let b = coboundary(&m, &prev.cochain(&e)).unwrap();
                    let moved = h.space().add(&z, &b);
                    assert_eq!(h.class_of(&moved).unwrap(), x);
                    let w = h.is_coboundary(&b).unwrap().expect("a coboundary");
                    assert_eq!(coboundary(&m, &w).unwrap(), b);
                }
                let nonzero = x.iter().any(|&v| v != 0);
                assert_eq!(
                    h.is_coboundary(&z).unwrap().is_none(),
                    nonzero,
                    "{name} degree {n}"
                );
            }
        }
    }
}

#[test]
fn class_of_rejects_non_cocycles() {
    let m = module(fixtures::idempotent_identity());
    let h = cohomology(&m, 1).unwrap();
    let c = Cochain {
        degree: 1,
        values: vec![1],
    };
    assert!(matches!(h.class_of(&c), Err(Error::NotACocycle(_))));
}

#[test]
fn reduction_matches_bar_complex_on_groups() {
    for (name, m) in fixtures::modules() {
        if !m.base().is_group() {
            continue;
        }
        let bar = categorical_reduction(&m).unwrap();
        for n in 1..=3 {
            assert_eq!(
                cohomology(&m, n).unwrap().group(),
                &bar.cohomology(n).unwrap(),
                "{name} degree {n}"
            );
        }
    }
}

#[test]
fn bar_complex_by_hand() {
    let g = FiniteGroup::cyclic(2);
    let a = FinAbGroup::cyclic(2);
    let bar = BarComplex::new(g, a.clone(), vec![AbHom::identity(a.clone()); 2]).unwrap();
    for n in 1..=3 {
        assert_eq!(bar.cohomology(n).unwrap().factors(), &[2]);
    }
    let t = BarComplex::new(FiniteGroup::trivial(), a.clone(), vec![AbHom::identity(a)]).unwrap();
    for n in 1..=3 {
        assert!(t.cohomology(n).unwrap().is_trivial());
    }
}

#[test]
fn reduced_cochains_commute_with_differentials() {
    for (name, m) in fixtures::modules() {
        if !m.base().is_group() {
            continue;
        }
        let bar = categorical_reduction(&m).unwrap();
        for n in 0..=2 {
            let space = CochainSpace::new(&m, n).unwrap();
            for j in 0..space.dim() {
                let mut e = vec![0; space.dim()];
                e[j] = 1;
                let c = space.cochain(&e);
                let left = reduce_cochain(&m, &coboundary(&m, &c).unwrap()).unwrap();
                let right = bar.coboundary(n, &reduce_cochain(&m, &c).unwrap()).unwrap();
                assert_eq!(left, right, "{name} degree {n}");
            }
        }
    }
}

#[test]
fn induced_maps_by_hand() {
    let m = z2();
    let c = Cochain {
        degree: 2,
        values: vec![1],
    };
    let ids: Vec<_> = (0..2)
        .map(|_| GroupHom::identity(&FiniteGroup::cyclic(2)))
        .collect();
    assert_eq!(pushforward(&m, &m, &ids, &c).unwrap(), c);
    let p = MonoidHom::identity(m.base().clone());
    assert_eq!(pullback_cochain(&p, &m, &c).unwrap().1, c);

    // Reduction mod 2 from constant Z/4 to constant Z/2 over Z/2.
    let z4 = module(fixtures::cyclic_constant(2, 4));
    let z2m = module(GroupBundle::constant(
        z4.base().clone(),
        FiniteGroup::cyclic(2),
    ));
    let q: Vec<GroupHom> = (0..2)
        .map(|_| {
            GroupHom::new(
                &FiniteGroup::cyclic(4),
                &FiniteGroup::cyclic(2),
                vec![0, 1, 0, 1],
            )
            .unwrap()
        })
        .collect();
    for n in 1..=3 {
        let space = CochainSpace::new(&z4, n).unwrap();
        for v in 0..4 {
            let c = Cochain {
                degree: n,
                values: vec![v; space.tuples().len()],
            };
            let pushed = pushforward(&z4, &z2m, &q, &c).unwrap();
            assert_eq!(pushed.values, vec![v % 2; space.tuples().len()]);
            assert_eq!(
                coboundary(&z2m, &pushed).unwrap(),
                pushforward(&z4, &z2m, &q, &coboundary(&z4, &c).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn pullback_commutes_with_coboundary() {
    let target = module(fixtures::cyclic_constant(2, 2));
    let source = Arc::new(FiniteMonoid::cyclic(4));
    let p = MonoidHom::new(source, target.base().clone(), vec![0, 1, 0, 1]).unwrap();
    for n in 0..=2 {
        let space = CochainSpace::new(&target, n).unwrap();
        for x in space.group().elements() {
            let c = space.cochain(&x);
            let (pulled, pc) = pullback_cochain(&p, &target, &c).unwrap();
            let (_, pdc) =
                pullback_cochain(&p, &target, &coboundary(&target, &c).unwrap()).unwrap();
            assert_eq!(coboundary(&pulled, &pc).unwrap(), pdc);
        }
    }
}

/// `Z/k` acting on `Z/m` by `x -> u^a x` on the left and `x -> v^b x` on the right.
fn twisted_cyclic(k: usize, m: usize, u: usize, v: usize) -> Option<Arc<DMModule>> {
    let pow = |b: usize, e: usize| (0..e).fold(1 % m, |acc, _| acc * b % m);
    if pow(u, k) != 1 % m || pow(v, k) != 1 % m {
        return None;
    }
    let bundle = GroupBundle::from_fn(
        Arc::new(FiniteMonoid::cyclic(k)),
        vec![FiniteGroup::cyclic(m); k],
        move |a, _, f| f * pow(u, a) % m,
        move |_, b, g| g * pow(v, b) % m,
    )
    .ok()?;
    DMModule::new(bundle).ok().map(Arc::new)
}

#[test]
fn leech_equals_bar_on_cyclic_groups() {
    for (k, m, u, v) in (1..5).flat_map(|k| {
        (1..5).flat_map(move |m| (0..5).flat_map(move |u| (0..5).map(move |v| (k, m, u, v))))
    }) {
        if let Some(module) = twisted_cyclic(k, m, u, v) {
            let bar = categorical_reduction(&module).unwrap();
            for n in 1..=3 {
                assert_eq!(
                    cohomology(&module, n).unwrap().group(),
                    &bar.cohomology(n).unwrap(),
                    "Z/{k} on Z/{m} by {u}, {v} in degree {n}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_route_equals_enumeration_on_cyclic_groups(k in 1usize..4, m in 1usize..4, u in 0usize..4, v in 0usize..4) {
        if let Some(module) = twisted_cyclic(k, m, u, v) {
            for n in 1..=3 {
                prop_assert_eq!(cohomology(&module, n).unwrap().group().clone(), brute_force_cohomology(&module, n).unwrap());
            }
        }
    }

    #[test]
    fn classes_are_invariant_under_translation(seed in any::<u64>()) {
        let modules = fixtures::modules();
        let (_, m) = &modules[(seed % modules.len() as u64) as usize];
        let h = cohomology(m, 2).unwrap();
        let prev = h.previous_space().clone();
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let phi: Vec<u64> = prev.moduli().iter().map(|&d| next() % d).collect();
        let x: Vec<u64> = h.group().factors().iter().map(|&d| next() % d).collect();
        let z = h.representative_of(&x).unwrap();
        let b = coboundary(m, &prev.cochain(&phi)).unwrap();
        prop_assert_eq!(h.class_of(&h.space().add(&z, &b)).unwrap(), x);
    }
}
