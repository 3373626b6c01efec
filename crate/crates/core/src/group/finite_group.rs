use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::abelian::{AbElement, FinAbGroup};
use super::intmat::{cokernel, IntMatrix};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::report::ValidationReport;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    size: usize,
    unit: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let m = FiniteMonoid::new(table, unit)?;
        Self::from_monoid(&m)
    }

    pub fn from_monoid(m: &FiniteMonoid) -> Result<Self> {
        let mut inverse = Vec::with_capacity(m.size());
        for a in m.elements() {
            inverse.push(
                m.inverse_of(a)
                    .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?,
            );
        }
        Ok(Self {
            size: m.size(),
            unit: m.unit(),
            table: m.rows().into_iter().flatten().collect(),
            inverse,
        })
    }

    pub fn from_fn(size: usize, unit: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::from_monoid(&FiniteMonoid::from_fn(size, unit, f)?)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_monoid(&FiniteMonoid::cyclic(n)).expect("cyclic group")
    }

    /// The table group of an invariant-factor group, elements in index order.
    pub fn from_abelian(g: &FinAbGroup) -> Self {
        let n = g.order_u64().expect("group too large") as usize;
        Self::from_fn(n, 0, |a, b| {
            g.index_of(&g.add(&g.element_at(a), &g.element_at(b)))
        })
        .expect("abelian table")
    }

    /// Symmetric group on three letters; 0 is the identity, 1 and 2 the
    /// 3-cycles, 3..=5 the transpositions.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        Self::from_fn(6, 0, |a, b| {
            let (pa, pb) = (perms[a], perms[b]);
            idx([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
        })
        .expect("S3 table")
    }

    pub fn klein() -> Self {
        Self::from_fn(4, 0, |a, b| a ^ b).expect("Klein table")
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn mul_all(&self, elems: &[usize]) -> usize {
        elems.iter().fold(self.unit, |acc, &x| self.mul(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        for a in self.elements() {
            for b in a + 1..self.size {
                if !self.commutes(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|x| self.commutes(z, x)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupHomCondition {
    Multiplicative,
}

/// A homomorphism between table groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn validate(
        source: &FiniteGroup,
        target: &FiniteGroup,
        map: &[usize],
    ) -> Result<ValidationReport<GroupHomCondition>> {
        if map.len() != source.size() {
            return Err(Error::SizeMismatch(format!(
                "map has length {} for a group of order {}",
                map.len(),
                source.size()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::OutOfRange {
                location: "group hom".into(),
                value: v,
                size: target.size(),
            });
        }
        let mut report = ValidationReport::new();
        for a in source.elements() {
            for b in source.elements() {
                let l = map[source.mul(a, b)];
                let r = target.mul(map[a], map[b]);
                report.check(l == r, GroupHomCondition::Multiplicative, [a, b], || {
                    format!("f(ab) = {l} but f(a)f(b) = {r}")
                });
            }
        }
        Ok(report)
    }

    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        let report = Self::validate(source, target, &map)?;
        if !report.is_valid() {
            return Err(Error::invalid("group homomorphism", &report));
        }
        Ok(Self { map })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self {
            map: g.elements().collect(),
        }
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Self {
            map: vec![target.unit(); source.size()],
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self . inner`.
    pub fn compose(&self, inner: &GroupHom) -> GroupHom {
        GroupHom {
            map: inner.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_bijective(&self, target_size: usize) -> bool {
        if self.map.len() != target_size {
            return false;
        }
        let mut seen = vec![false; target_size];
        self.map
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn inverse(&self, target_size: usize) -> Option<GroupHom> {
        if !self.is_bijective(target_size) {
            return None;
        }
        let mut inv = vec![0; target_size];
        for (a, &v) in self.map.iter().enumerate() {
            inv[v] = a;
        }
        Some(GroupHom { map: inv })
    }
}

/// All isomorphisms `a -> b`, found by assigning images to a greedy
/// generating set of `a` and extending along right multiplication.
pub fn group_isomorphisms(a: &FiniteGroup, b: &FiniteGroup) -> Vec<GroupHom> {
    if a.size() != b.size() {
        return vec![];
    }
    let mut gens = Vec::new();
    let mut span = vec![false; a.size()];
    span[a.unit()] = true;
    for x in a.elements() {
        if !span[x] {
            gens.push(x);
            span = closure(a, &gens);
        }
    }
    let order = |g: &FiniteGroup, x: usize| {
        let mut k = 1;
        let mut y = x;
        while y != g.unit() {
            y = g.mul(y, x);
            k += 1;
        }
        k
    };
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            b.elements()
                .filter(|&y| order(b, y) == order(a, x))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    search(a, b, &gens, &choices, &mut images, 0, &mut out);
    out
}

fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; g.size()];
    seen[g.unit()] = true;
    let mut stack = vec![g.unit()];
    while let Some(y) = stack.pop() {
        for &x in gens {
            let z = g.mul(y, x);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}

fn search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    choices: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<GroupHom>,
) {
    if depth == gens.len() {
        if let Some(map) = extend(a, b, gens, images) {
            let hom = GroupHom { map };
            if hom.is_bijective(b.size()) {
                out.push(hom);
            }
        }
        return;
    }
    for &y in &choices[depth] {
        images[depth] = y;
        search(a, b, gens, choices, images, depth + 1, out);
    }
}

fn extend(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.size()];
    map[a.unit()] = b.unit();
    let mut stack = vec![a.unit()];
    while let Some(y) = stack.pop() {
        for (&x, &img) in gens.iter().zip(images) {
            let z = a.mul(y, x);
            let w = b.mul(map[y], img);
            if map[z] == usize::MAX {
                map[z] = w;
                stack.push(z);
            } else if map[z] != w {
                return None;
            }
        }
    }
    Some(map)
}

/// A commutative table group identified with its invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianStructure {
    pub group: FinAbGroup,
    /// Element index -> coordinates.
    pub to_ab: Vec<AbElement>,
    /// Mixed-radix index of coordinates -> element index.
    pub from_ab: Vec<usize>,
}

impl AbelianStructure {
    pub fn coords(&self, x: usize) -> &AbElement {
        &self.to_ab[x]
    }

    pub fn element(&self, coords: &[u64]) -> usize {
        self.from_ab[self.group.index_of(coords)]
    }
}

/// Invariant factors of a commutative table group, or a non-commuting pair.
pub fn abelian_structure(g: &FiniteGroup) -> std::result::Result<AbelianStructure, (usize, usize)> {
    if let Some(pair) = g.non_commuting_pair() {
        return Err(pair);
    }
    let n = g.size();
    // Presentation: one generator per element, relations e_a + e_b = e_ab.
    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    let mut unit_rel = vec![BigInt::from(0); n];
    unit_rel[g.unit()] = BigInt::from(1);
    rels.push(unit_rel);
    for a in g.elements() {
        for b in a..n {
            let mut r = vec![BigInt::from(0); n];
            r[a] += 1;
            r[b] += 1;
            r[g.mul(a, b)] -= 1;
            rels.push(r);
        }
    }
    let c = cokernel(&IntMatrix::from_columns(n, &rels));
    let group = FinAbGroup::new(c.factors.iter().map(|d| d.to_u64().unwrap()).collect())
        .expect("cokernel is canonical");
    let to_ab: Vec<AbElement> = g
        .elements()
        .map(|a| {
            let coords: Vec<BigInt> = c.project.iter().map(|row| row[a].clone()).collect();
            group.reduce(&coords)
        })
        .collect();
    let mut from_ab = vec![usize::MAX; n];
    for (a, x) in to_ab.iter().enumerate() {
        from_ab[group.index_of(x)] = a;
    }
    debug_assert!(from_ab.iter().all(|&v| v != usize::MAX));
    Ok(AbelianStructure {
        group,
        to_ab,
        from_ab,
    })
}

/// Orders of all elements, for cross-checks.
pub fn element_orders(g: &FiniteGroup) -> HashMap<usize, usize> {
    let mut out = HashMap::new();
    for a in g.elements() {
        let mut x = a;
        let mut k = 1;
        while x != g.unit() {
            x = g.mul(x, a);
            k += 1;
        }
        out.insert(a, k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn structures() {
        assert_eq!(
            abelian_structure(&FiniteGroup::cyclic(2))
                .unwrap()
                .group
                .factors(),
            &[2]
        );
        assert_eq!(
            abelian_structure(&FiniteGroup::klein())
                .unwrap()
                .group
                .factors(),
            &[2, 2]
        );
        assert_eq!(
            abelian_structure(&FiniteGroup::cyclic(6))
                .unwrap()
                .group
                .factors(),
            &[6]
        );
        let (a, b) = abelian_structure(&FiniteGroup::symmetric3()).unwrap_err();
        let s3 = FiniteGroup::symmetric3();
        assert!(!s3.commutes(a, b));
    }

    #[test]
    fn klein_by_element_orders() {
        // Every non-identity element has order 2, so the factors are [2, 2].
        let orders = element_orders(&FiniteGroup::klein());
        assert_eq!(orders.values().filter(|&&o| o == 2).count(), 3);
    }

    #[test]
    fn isomorphism_counts() {
        // Aut(S_3) = S_3, Aut(Z/2 x Z/2) = S_3, Aut(Z/6) = Z/2.
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(group_isomorphisms(&s3, &s3).len(), 6);
        assert_eq!(
            group_isomorphisms(&FiniteGroup::klein(), &FiniteGroup::klein()).len(),
            6
        );
        assert_eq!(
            group_isomorphisms(&FiniteGroup::cyclic(6), &FiniteGroup::cyclic(6)).len(),
            2
        );
        assert!(group_isomorphisms(&FiniteGroup::cyclic(4), &FiniteGroup::klein()).is_empty());
        assert!(group_isomorphisms(&FiniteGroup::cyclic(6), &s3).is_empty());
        for h in group_isomorphisms(&s3, &s3) {
            assert!(GroupHom::new(&s3, &s3, h.map.clone()).is_ok());
        }
    }

    #[test]
    fn s3_center_is_trivial() {
        assert_eq!(FiniteGroup::symmetric3().center(), vec![0]);
    }

    proptest! {
        #[test]
        fn abelian_structure_round_trip(orders in prop::collection::vec(1u64..6, 0..3)) {
            let ab = FinAbGroup::from_orders(&orders);
            let g = FiniteGroup::from_abelian(&ab);
            let s = abelian_structure(&g).unwrap();
            prop_assert_eq!(&s.group, &ab);
            for a in g.elements() {
                prop_assert_eq!(s.element(s.coords(a)), a);
                for b in g.elements() {
                    prop_assert_eq!(
                        s.coords(g.mul(a, b)).clone(),
                        s.group.add(s.coords(a), s.coords(b))
                    );
                }
            }
        }
    }
}
