//! Finite monoidal groupoids as explicit tables, with an exhaustive axiom
//! validator and the structural operations used by the correspondence.

mod functor;
mod ops;

pub use functor::{
    compose_functors, compose_nat_horizontal, compose_nat_horizontal_alt, compose_nat_vertical,
    enumerate_functors, find_monoidal_isos, is_equivalence, normalize_functor, transport_functor,
    validate_functor, validate_nat_iso, EquivalenceWitness, FunctorCondition, MonoidalFunctor,
    MonoidalNatIso, NatCondition, SearchOutcome,
};
pub use ops::{aut_group, aut_is_abelian, fatten, is_categorical_group, pi0, picard, Pi0};

use crate::error::{Error, Result};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupoidCondition {
    IdentityShape,
    CompositionShape,
    CompositionUnital,
    CompositionAssociative,
    Inverse,
    TensorShape,
    TensorIdentity,
    TensorInterchange,
    ConstraintShape,
    AssocNatural,
    LeftUnitNatural,
    RightUnitNatural,
    Pentagon,
    Triangle,
    /// `l_{XY} a_{I,X,Y} = l_X (x) 1_Y`.
    LeftTriangle,
    /// `(1_X (x) r_Y) a_{X,Y,I} = r_{XY}`.
    RightTriangle,
    /// `l_I = r_I`.
    UnitsAgree,
}

/// Raw tables of a finite monoidal groupoid. Morphisms are global ids;
/// `compose[g * m + f]` is `g . f` when the source of `g` is the target of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidParts {
    pub objects: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    pub inverse: Vec<usize>,
    pub compose: Vec<Option<usize>>,
    pub tensor_obj: Vec<usize>,
    pub tensor_mor: Vec<usize>,
    pub unit: usize,
    pub assoc: Vec<usize>,
    pub lunit: Vec<usize>,
    pub runit: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonoidalGroupoid {
    parts: GroupoidParts,
    hom: Vec<Vec<usize>>,
}

fn check_len<T>(v: &[T], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "{what} has {} entries, expected {n}",
            v.len()
        )));
    }
    Ok(())
}

fn check_range(v: &[usize], n: usize, what: &str) -> Result<()> {
    if let Some((i, &x)) = v.iter().enumerate().find(|(_, &x)| x >= n) {
        return Err(Error::OutOfRange {
            location: format!("{what}[{i}]"),
            value: x,
            size: n,
        });
    }
    Ok(())
}

impl FinMonoidalGroupoid {
    /// Shape-checked but not validated; see [`validate_groupoid`].
    pub fn from_parts(parts: GroupoidParts) -> Result<Self> {
        let n = parts.objects;
        let m = parts.source.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("a groupoid needs an object".into()));
        }
        check_len(&parts.target, m, "target")?;
        check_len(&parts.identity, n, "identity")?;
        check_len(&parts.inverse, m, "inverse")?;
        check_len(&parts.compose, m * m, "compose")?;
        check_len(&parts.tensor_obj, n * n, "tensor_obj")?;
        check_len(&parts.tensor_mor, m * m, "tensor_mor")?;
        check_len(&parts.assoc, n * n * n, "assoc")?;
        check_len(&parts.lunit, n, "lunit")?;
        check_len(&parts.runit, n, "runit")?;
        check_range(&parts.source, n, "source")?;
        check_range(&parts.target, n, "target")?;
        check_range(&parts.tensor_obj, n, "tensor_obj")?;
        check_range(&[parts.unit], n, "unit")?;
        for (v, what) in [
            (&parts.identity, "identity"),
            (&parts.inverse, "inverse"),
            (&parts.tensor_mor, "tensor_mor"),
            (&parts.assoc, "assoc"),
            (&parts.lunit, "lunit"),
            (&parts.runit, "runit"),
        ] {
            check_range(v, m, what)?;
        }
        let flat: Vec<usize> = parts.compose.iter().flatten().copied().collect();
        check_range(&flat, m, "compose")?;
        let mut hom = vec![Vec::new(); n * n];
        for f in 0..m {
            hom[parts.source[f] * n + parts.target[f]].push(f);
        }
        Ok(Self { parts, hom })
    }

    pub fn new(parts: GroupoidParts) -> Result<Self> {
        let g = Self::from_parts(parts)?;
        let report = validate_groupoid(&g);
        if !report.is_valid() {
            return Err(Error::invalid("monoidal groupoid", &report));
        }
        Ok(g)
    }

    /// One object, one morphism.
    pub fn point() -> Self {
        Self::new(GroupoidParts {
            objects: 1,
            source: vec![0],
            target: vec![0],
            identity: vec![0],
            inverse: vec![0],
            compose: vec![Some(0)],
            tensor_obj: vec![0],
            tensor_mor: vec![0],
            unit: 0,
            assoc: vec![0],
            lunit: vec![0],
            runit: vec![0],
        })
        .expect("point groupoid")
    }

    pub fn parts(&self) -> &GroupoidParts {
        &self.parts
    }

    pub fn into_parts(self) -> GroupoidParts {
        self.parts
    }

    #[inline]
    pub fn objects(&self) -> usize {
        self.parts.objects
    }

    #[inline]
    pub fn morphisms(&self) -> usize {
        self.parts.source.len()
    }

    #[inline]
    pub fn unit(&self) -> usize {
        self.parts.unit
    }

    #[inline]
    pub fn src(&self, f: usize) -> usize {
        self.parts.source[f]
    }

    #[inline]
    pub fn tgt(&self, f: usize) -> usize {
        self.parts.target[f]
    }

    #[inline]
    pub fn id(&self, x: usize) -> usize {
        self.parts.identity[x]
    }

    #[inline]
    pub fn inv(&self, f: usize) -> usize {
        self.parts.inverse[f]
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x * self.parts.objects + y]
    }

    pub fn aut(&self, x: usize) -> &[usize] {
        self.hom(x, x)
    }

    #[inline]
    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.parts.compose[g * self.morphisms() + f]
    }

    /// `g . f`; panics if they do not compose.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("morphisms {g} and {f} do not compose"))
    }

    /// `fs[0] . fs[1] . ... . fs[k-1]`.
    pub fn comp(&self, fs: &[usize]) -> usize {
        let (last, rest) = fs.split_last().expect("empty composite");
        rest.iter()
            .rev()
            .fold(*last, |acc, &g| self.compose(g, acc))
    }

    #[inline]
    pub fn tensor_obj(&self, x: usize, y: usize) -> usize {
        self.parts.tensor_obj[x * self.parts.objects + y]
    }

    #[inline]
    pub fn tensor(&self, g: usize, f: usize) -> usize {
        self.parts.tensor_mor[g * self.morphisms() + f]
    }

    #[inline]
    pub fn assoc(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.parts.objects;
        self.parts.assoc[(x * n + y) * n + z]
    }

    #[inline]
    pub fn lunit(&self, x: usize) -> usize {
        self.parts.lunit[x]
    }

    #[inline]
    pub fn runit(&self, x: usize) -> usize {
        self.parts.runit[x]
    }

    pub fn is_iso(&self, x: usize, y: usize) -> bool {
        !self.hom(x, y).is_empty()
    }

    /// The full subgroupoid on `objects` (which must contain the unit and be
    /// closed under the tensor), relabelled by position.
    pub fn full_subgroupoid(&self, objects: &[usize]) -> Result<Self> {
        let pos_obj = |x: usize| objects.iter().position(|&o| o == x);
        let unit = pos_obj(self.unit())
            .ok_or_else(|| Error::ShapeMismatch("subset misses the unit".into()))?;
        let mors: Vec<usize> = (0..self.morphisms())
            .filter(|&f| pos_obj(self.src(f)).is_some() && pos_obj(self.tgt(f)).is_some())
            .collect();
        let mut new_id = vec![usize::MAX; self.morphisms()];
        for (i, &f) in mors.iter().enumerate() {
            new_id[f] = i;
        }
        let k = objects.len();
        let mm = mors.len();
        let obj = |x: usize| {
            pos_obj(x).ok_or_else(|| Error::ShapeMismatch(format!("subset not closed: object {x}")))
        };
        let mut tensor_obj = Vec::with_capacity(k * k);
        for &x in objects {
            for &y in objects {
                tensor_obj.push(obj(self.tensor_obj(x, y))?);
            }
        }
        let mut assoc = Vec::with_capacity(k * k * k);
        for &x in objects {
            for &y in objects {
                for &z in objects {
                    assoc.push(new_id[self.assoc(x, y, z)]);
                }
            }
        }
        let mut compose = vec![None; mm * mm];
        let mut tensor_mor = vec![0; mm * mm];
        for (i, &g) in mors.iter().enumerate() {
            for (j, &f) in mors.iter().enumerate() {
                compose[i * mm + j] = self.try_compose(g, f).map(|h| new_id[h]);
                tensor_mor[i * mm + j] = new_id[self.tensor(g, f)];
            }
        }
        Self::from_parts(GroupoidParts {
            objects: k,
            source: mors
                .iter()
                .map(|&f| obj(self.src(f)))
                .collect::<Result<_>>()?,
            target: mors
                .iter()
                .map(|&f| obj(self.tgt(f)))
                .collect::<Result<_>>()?,
            identity: objects.iter().map(|&x| new_id[self.id(x)]).collect(),
            inverse: mors.iter().map(|&f| new_id[self.inv(f)]).collect(),
            compose,
            tensor_obj,
            tensor_mor,
            unit,
            assoc,
            lunit: objects.iter().map(|&x| new_id[self.lunit(x)]).collect(),
            runit: objects.iter().map(|&x| new_id[self.runit(x)]).collect(),
        })
    }
}

/// Exhaustive check of the category, tensor, naturality and coherence axioms.
pub fn validate_groupoid(g: &FinMonoidalGroupoid) -> ValidationReport<GroupoidCondition> {
    use GroupoidCondition::*;
    let mut r = ValidationReport::new();
    let n = g.objects();
    let m = g.morphisms();
    let u = g.unit();

    for x in 0..n {
        let i = g.id(x);
        r.check(g.src(i) == x && g.tgt(i) == x, IdentityShape, [x], || {
            format!("identity of {x} is not an endomorphism of {x}")
        });
    }
    for gm in 0..m {
        for f in 0..m {
            let c = g.try_compose(gm, f);
            let ok = match c {
                None => g.src(gm) != g.tgt(f),
                Some(h) => g.src(gm) == g.tgt(f) && g.src(h) == g.src(f) && g.tgt(h) == g.tgt(gm),
            };
            r.check(ok, CompositionShape, [gm, f], || {
                "composition table entry has wrong shape".into()
            });
        }
    }
    if !r.is_valid() {
        return r;
    }

    for f in 0..m {
        let (x, y) = (g.src(f), g.tgt(f));
        r.check(
            g.compose(g.id(y), f) == f && g.compose(f, g.id(x)) == f,
            CompositionUnital,
            [f],
            || "identity is not neutral".into(),
        );
        let fi = g.inv(f);
        r.check(
            g.try_compose(fi, f) == Some(g.id(x)) && g.try_compose(f, fi) == Some(g.id(y)),
            Inverse,
            [f],
            || format!("{fi} is not inverse to {f}"),
        );
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for &f in g.hom(x, y) {
                    for &gg in g.hom(y, z) {
                        let gf = g.compose(gg, f);
                        for w in 0..n {
                            for &h in g.hom(z, w) {
                                r.check(
                                    g.compose(h, gf) == g.compose(g.compose(h, gg), f),
                                    CompositionAssociative,
                                    [h, gg, f],
                                    || "composition is not associative".into(),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    let mut tensor_ok = true;
    for gm in 0..m {
        for f in 0..m {
            let t = g.tensor(gm, f);
            let ok = g.src(t) == g.tensor_obj(g.src(gm), g.src(f))
                && g.tgt(t) == g.tensor_obj(g.tgt(gm), g.tgt(f));
            tensor_ok &= ok;
            r.check(ok, TensorShape, [gm, f], || {
                "tensor of morphisms has wrong shape".into()
            });
        }
    }
    let mut constraints_ok = true;
    for x in 0..n {
        for y in 0..n {
            let xy = g.tensor_obj(x, y);
            r.check(
                g.tensor(g.id(x), g.id(y)) == g.id(xy),
                TensorIdentity,
                [x, y],
                || "tensor of identities is not an identity".into(),
            );
            for z in 0..n {
                let a = g.assoc(x, y, z);
                let ok = g.src(a) == g.tensor_obj(xy, z)
                    && g.tgt(a) == g.tensor_obj(x, g.tensor_obj(y, z));
                constraints_ok &= ok;
                r.check(ok, ConstraintShape, [x, y, z], || {
                    "associator has wrong shape".into()
                });
            }
        }
        let ok = g.src(g.lunit(x)) == g.tensor_obj(u, x) && g.tgt(g.lunit(x)) == x;
        constraints_ok &= ok;
        r.check(ok, ConstraintShape, [x], || {
            "left unitor has wrong shape".into()
        });
        let ok = g.src(g.runit(x)) == g.tensor_obj(x, u) && g.tgt(g.runit(x)) == x;
        constraints_ok &= ok;
        r.check(ok, ConstraintShape, [x], || {
            "right unitor has wrong shape".into()
        });
    }
    if !tensor_ok {
        return r;
    }
    // Interchange over composable pairs.
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|f| g.hom_from_target(f).map(move |h| (h, f)))
        .collect();
    for &(g1, g2) in &pairs {
        let gg = g.compose(g1, g2);
        for &(f1, f2) in &pairs {
            let lhs = g.tensor(gg, g.compose(f1, f2));
            let rhs = g.try_compose(g.tensor(g1, f1), g.tensor(g2, f2));
            r.check(
                rhs == Some(lhs),
                TensorInterchange,
                [g1, g2, f1, f2],
                || "tensor does not preserve composition".into(),
            );
        }
    }
    if !constraints_ok || !r.is_valid() {
        return r;
    }

    for f in 0..m {
        let (x, x2) = (g.src(f), g.tgt(f));
        for gm in 0..m {
            let (y, y2) = (g.src(gm), g.tgt(gm));
            let fg = g.tensor(f, gm);
            for h in 0..m {
                let (z, z2) = (g.src(h), g.tgt(h));
                let lhs = g.compose(g.assoc(x2, y2, z2), g.tensor(fg, h));
                let rhs = g.compose(g.tensor(f, g.tensor(gm, h)), g.assoc(x, y, z));
                r.check(lhs == rhs, AssocNatural, [f, gm, h], || {
                    "associator is not natural".into()
                });
            }
        }
        let lhs = g.compose(g.lunit(x2), g.tensor(g.id(u), f));
        r.check(
            lhs == g.compose(f, g.lunit(x)),
            LeftUnitNatural,
            [f],
            || "left unitor is not natural".into(),
        );
        let lhs = g.compose(g.runit(x2), g.tensor(f, g.id(u)));
        r.check(
            lhs == g.compose(f, g.runit(x)),
            RightUnitNatural,
            [f],
            || "right unitor is not natural".into(),
        );
    }

    let t = |x, y| g.tensor_obj(x, y);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let lhs = g.compose(g.assoc(x, y, t(z, w)), g.assoc(t(x, y), z, w));
                    let rhs = g.comp(&[
                        g.tensor(g.id(x), g.assoc(y, z, w)),
                        g.assoc(x, t(y, z), w),
                        g.tensor(g.assoc(x, y, z), g.id(w)),
                    ]);
                    r.check(lhs == rhs, Pentagon, [x, y, z, w], || {
                        "pentagon fails".into()
                    });
                }
            }
            let lhs = g.compose(g.tensor(g.id(x), g.lunit(y)), g.assoc(x, u, y));
            r.check(
                lhs == g.tensor(g.runit(x), g.id(y)),
                Triangle,
                [x, y],
                || "triangle fails".into(),
            );
            let lhs = g.compose(g.lunit(t(x, y)), g.assoc(u, x, y));
            r.check(
                lhs == g.tensor(g.lunit(x), g.id(y)),
                LeftTriangle,
                [x, y],
                || "left unit triangle fails".into(),
            );
            let lhs = g.compose(g.tensor(g.id(x), g.runit(y)), g.assoc(x, y, u));
            r.check(lhs == g.runit(t(x, y)), RightTriangle, [x, y], || {
                "right unit triangle fails".into()
            });
        }
    }
    r.check(g.lunit(u) == g.runit(u), UnitsAgree, [u], || {
        "l_I differs from r_I".into()
    });
    r
}

impl FinMonoidalGroupoid {
    fn hom_from_target(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        let y = self.tgt(f);
        (0..self.objects()).flat_map(move |z| self.hom(y, z).iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::sigma;
    use crate::fixtures;
    use crate::schreier::{validate_system, SchreierCondition};

    #[test]
    fn point_is_valid() {
        assert!(validate_groupoid(&FinMonoidalGroupoid::point()).is_valid());
    }

    #[test]
    fn pentagon_tracks_the_cocycle_condition() {
        for name in [
            "z2-const-z4-twisted",
            "z3-const-z3-twisted",
            "idempotent-s3-push",
        ] {
            let s = fixtures::system(name);
            let n = s.base().size();
            let mut broken = 0;
            for (a, b, c) in
                (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            {
                let target = s.base().mul_all(&[a, b, c]);
                let size = s.group(target).size();
                for v in 0..size {
                    if v == s.lambda(a, b, c) {
                        continue;
                    }
                    let t = s.with_lambda_entry(a, b, c, v).unwrap();
                    let cocycle = !validate_system(&t).cites(&SchreierCondition::Cocycle);
                    let r = validate_groupoid(&sigma(&t));
                    assert_eq!(
                        cocycle,
                        !r.cites(&GroupoidCondition::Pentagon),
                        "{name} {a}{b}{c}"
                    );
                    if !cocycle {
                        broken += 1;
                    }
                }
            }
            assert!(broken > 0, "{name}");
        }
    }

    #[test]
    fn full_subgroupoid_keeps_structure() {
        let g = sigma(&fixtures::system("idempotent-s3-push"));
        let sub = g.full_subgroupoid(&[0]).unwrap();
        assert_eq!(sub.objects(), 1);
        assert_eq!(sub.morphisms(), g.aut(0).len());
        assert!(validate_groupoid(&sub).is_valid());
    }
}
