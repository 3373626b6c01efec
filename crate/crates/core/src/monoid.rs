//! Finite monoids as multiplication tables, their homomorphisms, and the
//! arrow calculus of the category whose arrows are triples `(a, b, c): b -> abc`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonoidCondition {
    Associativity,
    LeftUnit,
    RightUnit,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    size: usize,
    unit: usize,
    table: Vec<usize>,
}

fn check_square(table: &[Vec<usize>], unit: usize) -> Result<usize> {
    let n = table.len();
    if n == 0 {
        return Err(Error::SizeMismatch(
            "a monoid needs at least one element".into(),
        ));
    }
    if unit >= n {
        return Err(Error::OutOfRange {
            location: "unit".into(),
            value: unit,
            size: n,
        });
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::SizeMismatch(format!(
                "row {a} has length {} but the table has {n} rows",
                row.len()
            )));
        }
        for (b, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::OutOfRange {
                    location: format!("table[{a}][{b}]"),
                    value: v,
                    size: n,
                });
            }
        }
    }
    Ok(n)
}

/// Exhaustively checks the monoid axioms for a raw table.
pub fn validate_monoid(
    table: &[Vec<usize>],
    unit: usize,
) -> Result<ValidationReport<MonoidCondition>> {
    let n = check_square(table, unit)?;
    let mut report = ValidationReport::new();
    for a in 0..n {
        report.check(table[unit][a] == a, MonoidCondition::LeftUnit, [a], || {
            format!("unit * {a} = {}", table[unit][a])
        });
        report.check(table[a][unit] == a, MonoidCondition::RightUnit, [a], || {
            format!("{a} * unit = {}", table[a][unit])
        });
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                let l = table[ab][c];
                let r = table[a][table[b][c]];
                report.check(l == r, MonoidCondition::Associativity, [a, b, c], || {
                    format!("(ab)c = {l} but a(bc) = {r}")
                });
            }
        }
    }
    Ok(report)
}

impl FiniteMonoid {
    pub fn new(table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let report = validate_monoid(&table, unit)?;
        if !report.is_valid() {
            return Err(Error::invalid("monoid", &report));
        }
        Ok(Self::from_rows_unchecked(table, unit))
    }

    fn from_rows_unchecked(table: Vec<Vec<usize>>, unit: usize) -> Self {
        let size = table.len();
        Self {
            size,
            unit,
            table: table.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(size: usize, unit: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..size)
            .map(|a| (0..size).map(|b| f(a, b)).collect())
            .collect();
        Self::new(table, unit)
    }

    pub fn trivial() -> Self {
        Self::from_rows_unchecked(vec![vec![0]], 0)
    }

    /// The cyclic group of order `n`, with unit 0 and generator 1.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, 0, |a, b| (a + b) % n).expect("cyclic group table")
    }

    /// `{1, e}` with `e * e = e`; unit 0.
    pub fn idempotent() -> Self {
        Self::from_fn(2, 0, |a, b| a.max(b)).expect("idempotent table")
    }

    /// Direct product, element `(a, b)` indexed as `a * other.size + b`.
    pub fn product(&self, other: &FiniteMonoid) -> Self {
        let m = other.size;
        Self::from_rows_unchecked(
            (0..self.size * m)
                .map(|x| {
                    (0..self.size * m)
                        .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                        .collect()
                })
                .collect(),
            self.unit * m + other.unit,
        )
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

    pub fn mul_all(&self, elems: &[usize]) -> usize {
        elems.iter().fold(self.unit, |acc, &x| self.mul(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn inverse_of(&self, a: usize) -> Option<usize> {
        self.elements()
            .find(|&b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit)
    }

    pub fn is_group(&self) -> bool {
        self.elements().all(|a| self.inverse_of(a).is_some())
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn content_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    /// The submonoid on `elems` (which must be closed and contain the unit),
    /// relabelled by position in `elems`.
    pub fn restrict(&self, elems: &[usize]) -> Result<Self> {
        let pos = |x: usize| elems.iter().position(|&e| e == x);
        let unit = pos(self.unit)
            .ok_or_else(|| Error::ShapeMismatch("subset does not contain the unit".into()))?;
        let mut rows = Vec::with_capacity(elems.len());
        for &a in elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in elems {
                let p = pos(self.mul(a, b)).ok_or_else(|| {
                    Error::ShapeMismatch(format!("subset not closed at ({a}, {b})"))
                })?;
                row.push(p);
            }
            rows.push(row);
        }
        Self::new(rows, unit)
    }
}

/// The elements with a two-sided inverse, in increasing order.
pub fn units_of(m: &FiniteMonoid) -> Vec<usize> {
    m.elements()
        .filter(|&a| m.inverse_of(a).is_some())
        .collect()
}

/// An arrow `(a, b, c): b -> abc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DMArrow {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl DMArrow {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Self { a, b, c }
    }

    pub fn identity(m: &FiniteMonoid, b: usize) -> Self {
        Self::new(m.unit(), b, m.unit())
    }

    pub fn source(&self) -> usize {
        self.b
    }

    pub fn target(&self, m: &FiniteMonoid) -> usize {
        m.mul(m.mul(self.a, self.b), self.c)
    }
}

/// `(d, abc, e) . (a, b, c) = (da, b, ce)`.
pub fn compose_dm(m: &FiniteMonoid, outer: DMArrow, inner: DMArrow) -> Result<DMArrow> {
    let mid = inner.target(m);
    if outer.b != mid {
        return Err(Error::NotComposable(format!(
            "outer arrow starts at {} but inner ends at {mid}",
            outer.b
        )));
    }
    Ok(DMArrow::new(
        m.mul(outer.a, inner.a),
        inner.b,
        m.mul(inner.c, outer.c),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonoidHomCondition {
    Unit,
    Multiplicative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    pub source: Arc<FiniteMonoid>,
    pub target: Arc<FiniteMonoid>,
    pub map: Vec<usize>,
}

pub fn validate_monoid_hom(
    source: &FiniteMonoid,
    target: &FiniteMonoid,
    map: &[usize],
) -> Result<ValidationReport<MonoidHomCondition>> {
    if map.len() != source.size() {
        return Err(Error::SizeMismatch(format!(
            "map has length {} but the source has {} elements",
            map.len(),
            source.size()
        )));
    }
    for (a, &v) in map.iter().enumerate() {
        if v >= target.size() {
            return Err(Error::OutOfRange {
                location: format!("map[{a}]"),
                value: v,
                size: target.size(),
            });
        }
    }
    let mut report = ValidationReport::new();
    report.check(
        map[source.unit()] == target.unit(),
        MonoidHomCondition::Unit,
        [source.unit()],
        || format!("unit maps to {}", map[source.unit()]),
    );
    for a in source.elements() {
        for b in source.elements() {
            let l = map[source.mul(a, b)];
            let r = target.mul(map[a], map[b]);
            report.check(l == r, MonoidHomCondition::Multiplicative, [a, b], || {
                format!("p(ab) = {l} but p(a)p(b) = {r}")
            });
        }
    }
    Ok(report)
}

impl MonoidHom {
    pub fn new(
        source: Arc<FiniteMonoid>,
        target: Arc<FiniteMonoid>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let report = validate_monoid_hom(&source, &target, &map)?;
        if !report.is_valid() {
            return Err(Error::invalid("monoid homomorphism", &report));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn identity(m: Arc<FiniteMonoid>) -> Self {
        let map = m.elements().collect();
        Self {
            source: m.clone(),
            target: m,
            map,
        }
    }

    pub fn to_unit(source: Arc<FiniteMonoid>, target: Arc<FiniteMonoid>) -> Self {
        let map = vec![target.unit(); source.size()];
        Self {
            source,
            target,
            map,
        }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `self . inner`.
    pub fn compose(&self, inner: &MonoidHom) -> Result<MonoidHom> {
        if *inner.target != *self.source {
            return Err(Error::NotComposable(
                "monoid homomorphisms do not meet".into(),
            ));
        }
        Ok(MonoidHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            map: inner.map.iter().map(|&a| self.map[a]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        self.map.len() == self.target.size()
    }

    pub fn inverse(&self) -> Option<MonoidHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.size()];
        for (a, &v) in self.map.iter().enumerate() {
            inv[v] = a;
        }
        Some(MonoidHom {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target && self.map.iter().enumerate().all(|(a, &v)| a == v)
    }
}

/// All monoid isomorphisms `source -> target`, by backtracking.
pub fn monoid_isomorphisms(source: &FiniteMonoid, target: &FiniteMonoid) -> Vec<Vec<usize>> {
    let n = source.size();
    if n != target.size() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        s: &FiniteMonoid,
        t: &FiniteMonoid,
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = s.size();
        if i == n {
            out.push(map.clone());
            return;
        }
        for v in 0..n {
            if used[v] || (i == s.unit()) != (v == t.unit()) {
                continue;
            }
            map[i] = v;
            used[v] = true;
            let ok = (0..=i).all(|a| {
                (0..=i).all(|b| {
                    let ab = s.mul(a, b);
                    map[ab] == usize::MAX || map[ab] == t.mul(map[a], map[b])
                })
            });
            if ok {
                rec(s, t, i + 1, map, used, out);
            }
            used[v] = false;
            map[i] = usize::MAX;
        }
    }
    rec(source, target, 0, &mut map, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_monoids_validate() {
        assert!(validate_monoid(&[vec![0]], 0).unwrap().is_valid());
        assert!(validate_monoid(&[vec![0, 1], vec![1, 0]], 0)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn nonassociative_triple_is_named() {
        // Left-zero on {1, b} extended by c with a single broken product.
        let table = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 1]];
        let report = validate_monoid(&table, 0).unwrap();
        let mut brute = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        brute.push(vec![a, b, c]);
                    }
                }
            }
        }
        assert!(!brute.is_empty());
        let reported: Vec<_> = report
            .violations()
            .iter()
            .filter(|v| v.condition == MonoidCondition::Associativity)
            .map(|v| v.at.clone())
            .collect();
        assert_eq!(reported, brute);
    }

    #[test]
    fn out_of_range_entry() {
        assert!(matches!(
            validate_monoid(&[vec![0, 2], vec![1, 0]], 0),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn units() {
        assert_eq!(units_of(&FiniteMonoid::trivial()), vec![0]);
        assert_eq!(units_of(&FiniteMonoid::cyclic(2)), vec![0, 1]);
        assert_eq!(units_of(&FiniteMonoid::idempotent()), vec![0]);
    }

    #[test]
    fn dm_identities_and_composition() {
        let m = FiniteMonoid::cyclic(2);
        let id = DMArrow::identity(&m, 1);
        assert_eq!(compose_dm(&m, id, id).unwrap(), id);
        assert_eq!(
            compose_dm(&m, DMArrow::new(1, 0, 1), DMArrow::new(0, 0, 0)).unwrap(),
            DMArrow::new(1, 0, 1)
        );
        assert!(compose_dm(&m, DMArrow::new(0, 1, 0), DMArrow::new(0, 0, 0)).is_err());
    }

    #[test]
    fn dm_composition_is_associative_and_unital() {
        for m in [
            FiniteMonoid::cyclic(2),
            FiniteMonoid::idempotent(),
            FiniteMonoid::cyclic(3),
        ] {
            let n = m.size();
            let arrows: Vec<_> = (0..n * n * n)
                .map(|i| DMArrow::new(i / (n * n), (i / n) % n, i % n))
                .collect();
            for &f in &arrows {
                assert_eq!(
                    compose_dm(&m, DMArrow::identity(&m, f.target(&m)), f).unwrap(),
                    f
                );
                assert_eq!(compose_dm(&m, f, DMArrow::identity(&m, f.b)).unwrap(), f);
                for &g in arrows.iter().filter(|g| g.b == f.target(&m)) {
                    for &h in arrows.iter().filter(|h| h.b == g.target(&m)) {
                        let l = compose_dm(&m, h, compose_dm(&m, g, f).unwrap()).unwrap();
                        let r = compose_dm(&m, compose_dm(&m, h, g).unwrap(), f).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn homs() {
        let z2 = Arc::new(FiniteMonoid::cyclic(2));
        let one = Arc::new(FiniteMonoid::trivial());
        let e = Arc::new(FiniteMonoid::idempotent());
        assert!(MonoidHom::new(z2.clone(), z2.clone(), vec![0, 1]).is_ok());
        assert!(MonoidHom::new(z2.clone(), one, vec![0, 0]).is_ok());
        let r = validate_monoid_hom(&e, &z2, &[0, 1]).unwrap();
        assert!(r.cites_at(&MonoidHomCondition::Multiplicative, &[1, 1]));
        assert!(matches!(
            validate_monoid_hom(&e, &z2, &[0]),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn isomorphisms_of_cyclic_three() {
        let z3 = FiniteMonoid::cyclic(3);
        assert_eq!(monoid_isomorphisms(&z3, &z3).len(), 2);
    }

    fn arb_monoid() -> impl Strategy<Value = FiniteMonoid> {
        // Products of small cyclic groups and idempotent monoids.
        prop::collection::vec(0usize..4, 1..=3).prop_map(|kinds| {
            kinds.into_iter().fold(FiniteMonoid::trivial(), |acc, k| {
                let f = match k {
                    0 => FiniteMonoid::idempotent(),
                    1 => FiniteMonoid::cyclic(2),
                    2 => FiniteMonoid::cyclic(3),
                    _ => FiniteMonoid::trivial(),
                };
                acc.product(&f)
            })
        })
    }

    proptest! {
        #[test]
        fn units_form_a_group(m in arb_monoid()) {
            let u = units_of(&m);
            let g = m.restrict(&u).unwrap();
            prop_assert!(g.is_group());
        }
    }
}
