//! Families of groups `A_a` over a monoid with structure maps
//! `a_*: A_b -> A_ab` and `b^*: A_a -> A_ab`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{abelian_structure, AbHom, AbelianStructure, FiniteGroup, GroupHom};
use crate::monoid::{FiniteMonoid, MonoidHom};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BundleMode {
    /// Unit normalization and centralizing images only.
    General,
    /// Abelian groups with strictly functorial structure maps.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BundleCondition {
    /// `1_* = id` and `1^* = id`.
    UnitNormalization,
    /// Images of `a_*` and `b^*` commute in `A_ab`.
    Centralizing,
    NotAbelian,
    /// `(ab)_* = a_* b_*`.
    LeftFunctorial,
    /// `c^* a_* = a_* c^*`.
    Interchange,
    /// `c^* b^* = (bc)^*`.
    RightFunctorial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupBundle {
    base: Arc<FiniteMonoid>,
    groups: Vec<FiniteGroup>,
    lstar: Vec<GroupHom>,
    rstar: Vec<GroupHom>,
}

impl GroupBundle {
    /// `lstar[a * n + b]` is `a_*: A_b -> A_ab`; `rstar[a * n + b]` is
    /// `b^*: A_a -> A_ab`. Each map is checked to be a homomorphism between
    /// the right groups.
    pub fn new(
        base: Arc<FiniteMonoid>,
        groups: Vec<FiniteGroup>,
        lstar: Vec<GroupHom>,
        rstar: Vec<GroupHom>,
    ) -> Result<Self> {
        let n = base.size();
        if groups.len() != n || lstar.len() != n * n || rstar.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "a bundle over {n} elements needs {n} groups and {} maps of each kind",
                n * n
            )));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = base.mul(a, b);
                let l = GroupHom::validate(&groups[b], &groups[ab], &lstar[a * n + b].map)
                    .map_err(|e| Error::ShapeMismatch(format!("{a}_* on A_{b}: {e}")))?;
                if !l.is_valid() {
                    return Err(Error::ShapeMismatch(format!("{a}_* on A_{b}: {l}")));
                }
                let r = GroupHom::validate(&groups[a], &groups[ab], &rstar[a * n + b].map)
                    .map_err(|e| Error::ShapeMismatch(format!("{b}^* on A_{a}: {e}")))?;
                if !r.is_valid() {
                    return Err(Error::ShapeMismatch(format!("{b}^* on A_{a}: {r}")));
                }
            }
        }
        Ok(Self {
            base,
            groups,
            lstar,
            rstar,
        })
    }

    /// Builds the maps from closures `(a, b, f) -> a_*(f)` and `(a, b, g) -> b^*(g)`.
    pub fn from_fn(
        base: Arc<FiniteMonoid>,
        groups: Vec<FiniteGroup>,
        lstar: impl Fn(usize, usize, usize) -> usize,
        rstar: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let n = base.size();
        if groups.len() != n {
            return Err(Error::ShapeMismatch(format!("expected {n} groups")));
        }
        let mut ls = Vec::with_capacity(n * n);
        let mut rs = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                ls.push(GroupHom {
                    map: groups[b].elements().map(|f| lstar(a, b, f)).collect(),
                });
                rs.push(GroupHom {
                    map: groups[a].elements().map(|g| rstar(a, b, g)).collect(),
                });
            }
        }
        Self::new(base, groups, ls, rs)
    }

    /// `A_a = group` for every `a`, all structure maps the identity.
    pub fn constant(base: Arc<FiniteMonoid>, group: FiniteGroup) -> Self {
        let n = base.size();
        Self::from_fn(base, vec![group; n], |_, _, f| f, |_, _, g| g).expect("constant bundle")
    }

    pub fn base(&self) -> &Arc<FiniteMonoid> {
        &self.base
    }

    pub fn group(&self, a: usize) -> &FiniteGroup {
        &self.groups[a]
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    /// `a_*: A_b -> A_ab`.
    pub fn lstar(&self, a: usize, b: usize) -> &GroupHom {
        &self.lstar[a * self.base.size() + b]
    }

    /// `b^*: A_a -> A_ab`.
    pub fn rstar(&self, a: usize, b: usize) -> &GroupHom {
        &self.rstar[a * self.base.size() + b]
    }

    /// `a_*(f)` for `f` in `A_b`.
    #[inline]
    pub fn push(&self, a: usize, b: usize, f: usize) -> usize {
        self.lstar[a * self.base.size() + b].map[f]
    }

    /// `b^*(g)` for `g` in `A_a`.
    #[inline]
    pub fn pull(&self, a: usize, b: usize, g: usize) -> usize {
        self.rstar[a * self.base.size() + b].map[g]
    }

    pub fn is_abelian(&self) -> bool {
        self.groups.iter().all(|g| g.is_abelian())
    }

    pub fn validate(&self, mode: BundleMode) -> ValidationReport<BundleCondition> {
        use BundleCondition::*;
        let m = &*self.base;
        let u = m.unit();
        let mut report = ValidationReport::new();
        for a in m.elements() {
            report.check(
                self.lstar(u, a).is_identity(),
                UnitNormalization,
                [u, a],
                || format!("1_* is not the identity on A_{a}"),
            );
            report.check(
                self.rstar(a, u).is_identity(),
                UnitNormalization,
                [a, u],
                || format!("1^* is not the identity on A_{a}"),
            );
        }
        for a in m.elements() {
            for b in m.elements() {
                let ab = m.mul(a, b);
                let g_ab = self.group(ab);
                'pair: for f in self.group(b).elements() {
                    let x = self.push(a, b, f);
                    for g in self.group(a).elements() {
                        if !g_ab.commutes(x, self.pull(a, b, g)) {
                            report.push(
                                Centralizing,
                                [a, b],
                                format!("{a}_*({f}) and {b}^*({g}) do not commute"),
                            );
                            break 'pair;
                        }
                    }
                }
            }
        }
        if mode == BundleMode::General {
            return report;
        }
        for a in m.elements() {
            if let Some((x, y)) = self.group(a).non_commuting_pair() {
                report.push(
                    NotAbelian,
                    [a],
                    format!("{x} and {y} do not commute in A_{a}"),
                );
            }
        }
        for a in m.elements() {
            for b in m.elements() {
                for c in m.elements() {
                    let ab = m.mul(a, b);
                    let bc = m.mul(b, c);
                    // (ab)_* = a_* b_* on A_c
                    let ok = self.group(c).elements().all(|f| {
                        self.push(ab, c, f) == self.push(a, m.mul(b, c), self.push(b, c, f))
                    });
                    report.check(ok, LeftFunctorial, [a, b, c], || {
                        format!("({a}{b})_* differs from {a}_*{b}_* on A_{c}")
                    });
                    // c^* a_* = a_* c^* on A_b
                    let ok = self.group(b).elements().all(|g| {
                        self.pull(m.mul(a, b), c, self.push(a, b, g))
                            == self.push(a, bc, self.pull(b, c, g))
                    });
                    report.check(ok, Interchange, [a, b, c], || {
                        format!("{c}^*{a}_* differs from {a}_*{c}^* on A_{b}")
                    });
                    // c^* b^* = (bc)^* on A_a
                    let ok = self
                        .group(a)
                        .elements()
                        .all(|h| self.pull(ab, c, self.pull(a, b, h)) == self.pull(a, bc, h));
                    report.check(ok, RightFunctorial, [a, b, c], || {
                        format!("{c}^*{b}^* differs from ({b}{c})^* on A_{a}")
                    });
                }
            }
        }
        report
    }

    /// `A_a := A'_{p(a)}` with maps `p(a)_*` and `p(b)^*`.
    pub fn pullback(p: &MonoidHom, target: &GroupBundle) -> Result<GroupBundle> {
        if *p.target != *target.base {
            return Err(Error::ShapeMismatch(
                "pullback along a map into a different monoid".into(),
            ));
        }
        let n = p.source.size();
        let groups = (0..n).map(|a| target.group(p.apply(a)).clone()).collect();
        let mut ls = Vec::with_capacity(n * n);
        let mut rs = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                ls.push(target.lstar(p.apply(a), p.apply(b)).clone());
                rs.push(target.rstar(p.apply(a), p.apply(b)).clone());
            }
        }
        GroupBundle::new(p.source.clone(), groups, ls, rs)
    }
}

/// A strictly functorial bundle of abelian groups, with each group's
/// invariant-factor view and the structure maps as matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMModule {
    bundle: GroupBundle,
    structures: Vec<AbelianStructure>,
}

impl DMModule {
    pub fn new(bundle: GroupBundle) -> Result<Self> {
        let report = bundle.validate(BundleMode::Strict);
        if !report.is_valid() {
            return Err(Error::invalid("strict module", &report));
        }
        let structures = bundle
            .groups
            .iter()
            .map(|g| abelian_structure(g).expect("checked abelian"))
            .collect();
        Ok(Self { bundle, structures })
    }

    pub fn bundle(&self) -> &GroupBundle {
        &self.bundle
    }

    pub fn base(&self) -> &Arc<FiniteMonoid> {
        &self.bundle.base
    }

    pub fn structure(&self, a: usize) -> &AbelianStructure {
        &self.structures[a]
    }

    fn as_ab_hom(&self, src: usize, dst: usize, h: &GroupHom) -> AbHom {
        let s = &self.structures[src];
        let t = &self.structures[dst];
        let images: Vec<_> = (0..s.group.rank())
            .map(|j| t.coords(h.apply(s.element(&s.group.generator(j)))).clone())
            .collect();
        AbHom::from_images(s.group.clone(), t.group.clone(), &images).expect("homomorphism")
    }

    /// `a_*` as a matrix between invariant-factor forms.
    pub fn lstar_matrix(&self, a: usize, b: usize) -> AbHom {
        let ab = self.base().mul(a, b);
        self.as_ab_hom(b, ab, self.bundle.lstar(a, b))
    }

    /// `b^*` as a matrix between invariant-factor forms.
    pub fn rstar_matrix(&self, a: usize, b: usize) -> AbHom {
        let ab = self.base().mul(a, b);
        self.as_ab_hom(a, ab, self.bundle.rstar(a, b))
    }

    pub fn pullback(p: &MonoidHom, target: &DMModule) -> Result<DMModule> {
        DMModule::new(GroupBundle::pullback(p, &target.bundle)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModMorphismCondition {
    /// `q_ab a_* = p(a)_* q_b`.
    Left,
    /// `q_ab b^* = p(b)^* q_a`.
    Right,
}

/// Checks that `(p, q)` with `q_a: A_a -> A'_{p(a)}` intertwines the structure maps.
pub fn validate_mod_morphism(
    p: &MonoidHom,
    q: &[GroupHom],
    source: &GroupBundle,
    target: &GroupBundle,
) -> Result<ValidationReport<ModMorphismCondition>> {
    check_family_shape(p, q, source, target)?;
    let m = &*source.base;
    let mut report = ValidationReport::new();
    for a in m.elements() {
        for b in m.elements() {
            let ab = m.mul(a, b);
            let (pa, pb) = (p.apply(a), p.apply(b));
            let ok = source
                .group(b)
                .elements()
                .all(|f| q[ab].apply(source.push(a, b, f)) == target.push(pa, pb, q[b].apply(f)));
            report.check(ok, ModMorphismCondition::Left, [a, b], || {
                format!("q_{ab} {a}_* differs from p({a})_* q_{b}")
            });
            let ok = source
                .group(a)
                .elements()
                .all(|g| q[ab].apply(source.pull(a, b, g)) == target.pull(pa, pb, q[a].apply(g)));
            report.check(ok, ModMorphismCondition::Right, [a, b], || {
                format!("q_{ab} {b}^* differs from p({b})^* q_{a}")
            });
        }
    }
    Ok(report)
}

pub(crate) fn check_family_shape(
    p: &MonoidHom,
    q: &[GroupHom],
    source: &GroupBundle,
    target: &GroupBundle,
) -> Result<()> {
    if *p.source != *source.base || *p.target != *target.base {
        return Err(Error::ShapeMismatch(
            "p does not connect the two bases".into(),
        ));
    }
    if q.len() != source.base.size() {
        return Err(Error::ShapeMismatch(format!(
            "expected {} component maps, got {}",
            source.base.size(),
            q.len()
        )));
    }
    for (a, qa) in q.iter().enumerate() {
        let r = GroupHom::validate(source.group(a), target.group(p.apply(a)), &qa.map)
            .map_err(|e| Error::ShapeMismatch(format!("q_{a}: {e}")))?;
        if !r.is_valid() {
            return Err(Error::ShapeMismatch(format!(
                "q_{a} is not a homomorphism: {r}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinAbGroup;

    fn z2() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::cyclic(2))
    }

    #[test]
    fn constant_bundle_is_valid_in_both_modes() {
        let b = GroupBundle::constant(z2(), FiniteGroup::cyclic(2));
        assert!(b.validate(BundleMode::General).is_valid());
        assert!(b.validate(BundleMode::Strict).is_valid());
    }

    #[test]
    fn idempotent_bundle_with_identity_maps() {
        let e = Arc::new(FiniteMonoid::idempotent());
        let b = GroupBundle::from_fn(
            e,
            vec![FiniteGroup::trivial(), FiniteGroup::cyclic(2)],
            |a, b, f| if a.max(b) == 1 && b == 1 { f } else { 0 },
            |a, b, g| if a.max(b) == 1 && a == 1 { g } else { 0 },
        )
        .unwrap();
        assert!(b.validate(BundleMode::Strict).is_valid());
    }

    #[test]
    fn broken_left_functoriality_is_named() {
        // A_1 = A_e = Z/2 with e_* = 0 on A_e but the identity on A_1.
        let e = Arc::new(FiniteMonoid::idempotent());
        let b = GroupBundle::from_fn(
            e,
            vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)],
            |a, b, f| if a == 1 && b == 1 { 0 } else { f },
            |_, _, g| g,
        )
        .unwrap();
        let r = b.validate(BundleMode::Strict);
        // On A_1, (ee)_* = e_* is the identity while e_* e_* is zero.
        assert!(r.cites_at(&BundleCondition::LeftFunctorial, &[1, 1, 0]));
        assert!(b.validate(BundleMode::General).is_valid());
    }

    #[test]
    fn pullbacks() {
        let m = z2();
        let one = Arc::new(FiniteMonoid::trivial());
        let b = GroupBundle::constant(m.clone(), FiniteGroup::cyclic(2));
        let id = MonoidHom::identity(m.clone());
        assert_eq!(GroupBundle::pullback(&id, &b).unwrap(), b);
        let c = GroupBundle::constant(one.clone(), FiniteGroup::cyclic(3));
        let to_unit = MonoidHom::to_unit(m.clone(), one);
        assert_eq!(
            GroupBundle::pullback(&to_unit, &c).unwrap(),
            GroupBundle::constant(m, FiniteGroup::cyclic(3))
        );
        let e = Arc::new(FiniteMonoid::idempotent());
        let p = MonoidHom::to_unit(e.clone(), z2());
        assert_eq!(
            GroupBundle::pullback(&p, &b).unwrap(),
            GroupBundle::constant(e, FiniteGroup::cyclic(2))
        );
    }

    #[test]
    fn mod_morphisms() {
        let m = z2();
        let b4 = GroupBundle::constant(m.clone(), FiniteGroup::cyclic(4));
        let b2 = GroupBundle::constant(m.clone(), FiniteGroup::cyclic(2));
        let id = MonoidHom::identity(m);
        let ident: Vec<_> = (0..2)
            .map(|_| GroupHom::identity(&FiniteGroup::cyclic(4)))
            .collect();
        assert!(validate_mod_morphism(&id, &ident, &b4, &b4)
            .unwrap()
            .is_valid());
        let zero: Vec<_> = (0..2)
            .map(|_| GroupHom::trivial(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2)))
            .collect();
        assert!(validate_mod_morphism(&id, &zero, &b4, &b2)
            .unwrap()
            .is_valid());
        let reduce: Vec<_> = (0..2)
            .map(|_| GroupHom {
                map: vec![0, 1, 0, 1],
            })
            .collect();
        assert!(validate_mod_morphism(&id, &reduce, &b4, &b2)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn module_matrices() {
        let m = DMModule::new(GroupBundle::constant(z2(), FiniteGroup::cyclic(4))).unwrap();
        assert_eq!(m.lstar_matrix(1, 1), AbHom::identity(FinAbGroup::cyclic(4)));
    }
}
