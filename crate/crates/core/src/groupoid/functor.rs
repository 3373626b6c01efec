use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use super::FinMonoidalGroupoid;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctorCondition {
    MorphismShape,
    Identity,
    Composition,
    ConstraintShape,
    /// `F(f (x) g) phi_{X,Y} = phi_{X',Y'} (Ff (x) Fg)`.
    Naturality,
    Hexagon,
    LeftUnit,
    RightUnit,
}

/// `(F, phi, phi0)` with `phi[x * n + y]: FX (x) FY -> F(X (x) Y)` and `phi0: I' -> FI`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalFunctor {
    pub source: Arc<FinMonoidalGroupoid>,
    pub target: Arc<FinMonoidalGroupoid>,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
    pub phi: Vec<usize>,
    pub phi0: usize,
}

impl MonoidalFunctor {
    pub fn from_parts(
        source: Arc<FinMonoidalGroupoid>,
        target: Arc<FinMonoidalGroupoid>,
        obj: Vec<usize>,
        mor: Vec<usize>,
        phi: Vec<usize>,
        phi0: usize,
    ) -> Result<Self> {
        let (n, m) = (source.objects(), source.morphisms());
        if obj.len() != n || mor.len() != m || phi.len() != n * n {
            return Err(Error::ShapeMismatch(
                "functor tables have the wrong length".into(),
            ));
        }
        if obj.iter().any(|&x| x >= target.objects())
            || mor
                .iter()
                .chain(&phi)
                .chain([&phi0])
                .any(|&f| f >= target.morphisms())
        {
            return Err(Error::ShapeMismatch("functor entry out of range".into()));
        }
        Ok(Self {
            source,
            target,
            obj,
            mor,
            phi,
            phi0,
        })
    }

    pub fn new(
        source: Arc<FinMonoidalGroupoid>,
        target: Arc<FinMonoidalGroupoid>,
        obj: Vec<usize>,
        mor: Vec<usize>,
        phi: Vec<usize>,
        phi0: usize,
    ) -> Result<Self> {
        let f = Self::from_parts(source, target, obj, mor, phi, phi0)?;
        let report = validate_functor(&f);
        if !report.is_valid() {
            return Err(Error::invalid("monoidal functor", &report));
        }
        Ok(f)
    }

    pub fn identity(g: Arc<FinMonoidalGroupoid>) -> Self {
        let n = g.objects();
        Self {
            obj: (0..n).collect(),
            mor: (0..g.morphisms()).collect(),
            phi: (0..n * n)
                .map(|i| g.id(g.tensor_obj(i / n, i % n)))
                .collect(),
            phi0: g.id(g.unit()),
            source: g.clone(),
            target: g,
        }
    }

    #[inline]
    pub fn phi(&self, x: usize, y: usize) -> usize {
        self.phi[x * self.source.objects() + y]
    }

    pub fn is_strictly_unitary(&self) -> bool {
        let t = &self.target;
        self.obj[self.source.unit()] == t.unit() && self.phi0 == t.id(t.unit())
    }
}

pub fn validate_functor(f: &MonoidalFunctor) -> ValidationReport<FunctorCondition> {
    use FunctorCondition::*;
    let (s, t) = (&*f.source, &*f.target);
    let n = s.objects();
    let mut r = ValidationReport::new();
    for g in 0..s.morphisms() {
        let fg = f.mor[g];
        r.check(
            t.src(fg) == f.obj[s.src(g)] && t.tgt(fg) == f.obj[s.tgt(g)],
            MorphismShape,
            [g],
            || format!("F({g}) has the wrong endpoints"),
        );
    }
    for x in 0..n {
        for y in 0..n {
            let p = f.phi(x, y);
            r.check(
                t.src(p) == t.tensor_obj(f.obj[x], f.obj[y])
                    && t.tgt(p) == f.obj[s.tensor_obj(x, y)],
                ConstraintShape,
                [x, y],
                || "phi has the wrong endpoints".into(),
            );
        }
    }
    r.check(
        t.src(f.phi0) == t.unit() && t.tgt(f.phi0) == f.obj[s.unit()],
        ConstraintShape,
        [],
        || "phi0 has the wrong endpoints".into(),
    );
    if !r.is_valid() {
        return r;
    }
    for x in 0..n {
        r.check(f.mor[s.id(x)] == t.id(f.obj[x]), Identity, [x], || {
            "identity not preserved".into()
        });
    }
    for g in 0..s.morphisms() {
        for h in 0..s.morphisms() {
            if let Some(gh) = s.try_compose(g, h) {
                r.check(
                    f.mor[gh] == t.compose(f.mor[g], f.mor[h]),
                    Composition,
                    [g, h],
                    || "composition not preserved".into(),
                );
            }
        }
    }
    for g in 0..s.morphisms() {
        for h in 0..s.morphisms() {
            let (x, x2, y, y2) = (s.src(g), s.tgt(g), s.src(h), s.tgt(h));
            let lhs = t.compose(f.mor[s.tensor(g, h)], f.phi(x, y));
            let rhs = t.compose(f.phi(x2, y2), t.tensor(f.mor[g], f.mor[h]));
            r.check(lhs == rhs, Naturality, [g, h], || {
                "phi is not natural".into()
            });
        }
    }
    let fo = |x: usize| f.obj[x];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, yz) = (s.tensor_obj(x, y), s.tensor_obj(y, z));
                let lhs = t.comp(&[
                    f.mor[s.assoc(x, y, z)],
                    f.phi(xy, z),
                    t.tensor(f.phi(x, y), t.id(fo(z))),
                ]);
                let rhs = t.comp(&[
                    f.phi(x, yz),
                    t.tensor(t.id(fo(x)), f.phi(y, z)),
                    t.assoc(fo(x), fo(y), fo(z)),
                ]);
                r.check(lhs == rhs, Hexagon, [x, y, z], || "hexagon fails".into());
            }
        }
        let u = s.unit();
        let lhs = t.comp(&[
            f.mor[s.lunit(x)],
            f.phi(u, x),
            t.tensor(f.phi0, t.id(fo(x))),
        ]);
        r.check(lhs == t.lunit(fo(x)), LeftUnit, [x], || {
            "left unit square fails".into()
        });
        let lhs = t.comp(&[
            f.mor[s.runit(x)],
            f.phi(x, u),
            t.tensor(t.id(fo(x)), f.phi0),
        ]);
        r.check(lhs == t.runit(fo(x)), RightUnit, [x], || {
            "right unit square fails".into()
        });
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NatCondition {
    Shape,
    Natural,
    /// `delta_{XY} phi_{X,Y} = phi'_{X,Y} (delta_X (x) delta_Y)`.
    Tensor,
    /// `delta_I phi0 = phi0'`.
    Unit,
}

/// A monoidal natural isomorphism `source => target`, component `comp[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalNatIso {
    pub source: Arc<MonoidalFunctor>,
    pub target: Arc<MonoidalFunctor>,
    pub comp: Vec<usize>,
}

impl MonoidalNatIso {
    pub fn new(
        source: Arc<MonoidalFunctor>,
        target: Arc<MonoidalFunctor>,
        comp: Vec<usize>,
    ) -> Result<Self> {
        let d = Self {
            source,
            target,
            comp,
        };
        let report = validate_nat_iso(&d)?;
        if !report.is_valid() {
            return Err(Error::invalid("monoidal natural isomorphism", &report));
        }
        Ok(d)
    }

    pub fn identity(f: Arc<MonoidalFunctor>) -> Self {
        let comp = f.obj.iter().map(|&x| f.target.id(x)).collect();
        Self {
            source: f.clone(),
            target: f,
            comp,
        }
    }
}

pub fn validate_nat_iso(d: &MonoidalNatIso) -> Result<ValidationReport<NatCondition>> {
    use NatCondition::*;
    let (f, f2) = (&*d.source, &*d.target);
    if f.source != f2.source || f.target != f2.target {
        return Err(Error::ShapeMismatch("functors are not parallel".into()));
    }
    let (s, t) = (&*f.source, &*f.target);
    let n = s.objects();
    if d.comp.len() != n || d.comp.iter().any(|&c| c >= t.morphisms()) {
        return Err(Error::ShapeMismatch(
            "components have the wrong shape".into(),
        ));
    }
    let mut r = ValidationReport::new();
    for x in 0..n {
        let c = d.comp[x];
        r.check(
            t.src(c) == f.obj[x] && t.tgt(c) == f2.obj[x],
            Shape,
            [x],
            || "component has the wrong endpoints".into(),
        );
    }
    if !r.is_valid() {
        return Ok(r);
    }
    for g in 0..s.morphisms() {
        let (x, y) = (s.src(g), s.tgt(g));
        r.check(
            t.compose(f2.mor[g], d.comp[x]) == t.compose(d.comp[y], f.mor[g]),
            Natural,
            [g],
            || "not natural".into(),
        );
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = t.compose(d.comp[s.tensor_obj(x, y)], f.phi(x, y));
            let rhs = t.compose(f2.phi(x, y), t.tensor(d.comp[x], d.comp[y]));
            r.check(lhs == rhs, Tensor, [x, y], || "not monoidal".into());
        }
    }
    r.check(
        t.compose(d.comp[s.unit()], f.phi0) == f2.phi0,
        Unit,
        [s.unit()],
        || "unit condition fails".into(),
    );
    Ok(r)
}

/// `f2 . f1` with constraints `F2(phi1) phi2` and `F2(phi1_0) phi2_0`.
pub fn compose_functors(f2: &MonoidalFunctor, f1: &MonoidalFunctor) -> Result<MonoidalFunctor> {
    if f1.target != f2.source {
        return Err(Error::NotComposable("functors do not meet".into()));
    }
    let t = &*f2.target;
    let n = f1.source.objects();
    let phi = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            t.compose(f2.mor[f1.phi(x, y)], f2.phi(f1.obj[x], f1.obj[y]))
        })
        .collect();
    Ok(MonoidalFunctor {
        source: f1.source.clone(),
        target: f2.target.clone(),
        obj: f1.obj.iter().map(|&x| f2.obj[x]).collect(),
        mor: f1.mor.iter().map(|&g| f2.mor[g]).collect(),
        phi,
        phi0: t.compose(f2.mor[f1.phi0], f2.phi0),
    })
}

/// `(d2 . d1)_X = d2_X d1_X`.
pub fn compose_nat_vertical(d2: &MonoidalNatIso, d1: &MonoidalNatIso) -> Result<MonoidalNatIso> {
    if d1.target != d2.source {
        return Err(Error::NotComposable("transformations do not meet".into()));
    }
    let t = &d1.source.target;
    Ok(MonoidalNatIso {
        source: d1.source.clone(),
        target: d2.target.clone(),
        comp: d2
            .comp
            .iter()
            .zip(&d1.comp)
            .map(|(&b, &a)| t.compose(b, a))
            .collect(),
    })
}

fn horizontal_endpoints(
    d2: &MonoidalNatIso,
    d1: &MonoidalNatIso,
) -> Result<(MonoidalFunctor, MonoidalFunctor)> {
    Ok((
        compose_functors(&d2.source, &d1.source)?,
        compose_functors(&d2.target, &d1.target)?,
    ))
}

/// For `d1: F => G` and `d2: F' => G'`, the components `G'(d1_X) d2_{FX}`.
pub fn compose_nat_horizontal(d2: &MonoidalNatIso, d1: &MonoidalNatIso) -> Result<MonoidalNatIso> {
    let (src, tgt) = horizontal_endpoints(d2, d1)?;
    let t = &*d2.source.target;
    let (f, g2) = (&*d1.source, &*d2.target);
    let comp = (0..f.source.objects())
        .map(|x| t.compose(g2.mor[d1.comp[x]], d2.comp[f.obj[x]]))
        .collect();
    Ok(MonoidalNatIso {
        source: Arc::new(src),
        target: Arc::new(tgt),
        comp,
    })
}

/// Same transformation by the other formula, `d2_{GX} F'(d1_X)`.
pub fn compose_nat_horizontal_alt(
    d2: &MonoidalNatIso,
    d1: &MonoidalNatIso,
) -> Result<MonoidalNatIso> {
    let (src, tgt) = horizontal_endpoints(d2, d1)?;
    let t = &*d2.source.target;
    let (g, f2) = (&*d1.target, &*d2.source);
    let comp = (0..g.source.objects())
        .map(|x| t.compose(d2.comp[g.obj[x]], f2.mor[d1.comp[x]]))
        .collect();
    Ok(MonoidalNatIso {
        source: Arc::new(src),
        target: Arc::new(tgt),
        comp,
    })
}

/// The strictly unitary functor `F^u` and the iso `F => F^u` whose only
/// non-identity component is `phi0^-1` at the unit.
pub fn normalize_functor(f: &MonoidalFunctor) -> (MonoidalFunctor, MonoidalNatIso) {
    let (s, t) = (&*f.source, &*f.target);
    let n = s.objects();
    let u = s.unit();
    let psi: Vec<usize> = (0..n)
        .map(|x| {
            if x == u {
                t.inv(f.phi0)
            } else {
                t.id(f.obj[x])
            }
        })
        .collect();
    transport_functor(f, &psi).expect("psi starts at the images of F")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceWitness {
    Equivalence,
    /// Two morphisms `X -> Y` with the same image.
    NotFaithful {
        x: usize,
        y: usize,
    },
    /// A morphism `FX -> FY` not in the image.
    NotFull {
        x: usize,
        y: usize,
    },
    /// A target object not isomorphic to any image.
    NotEssentiallySurjective {
        object: usize,
    },
}

impl EquivalenceWitness {
    pub fn is_equivalence(&self) -> bool {
        *self == EquivalenceWitness::Equivalence
    }
}

/// Full, faithful and essentially surjective, checked exhaustively.
pub fn is_equivalence(f: &MonoidalFunctor) -> EquivalenceWitness {
    let (s, t) = (&*f.source, &*f.target);
    for x in 0..s.objects() {
        for y in 0..s.objects() {
            let mut images: Vec<usize> = s.hom(x, y).iter().map(|&g| f.mor[g]).collect();
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            if images.len() != before {
                return EquivalenceWitness::NotFaithful { x, y };
            }
            if images.len() != t.hom(f.obj[x], f.obj[y]).len() {
                return EquivalenceWitness::NotFull { x, y };
            }
        }
    }
    for object in 0..t.objects() {
        if !f.obj.iter().any(|&fx| t.is_iso(fx, object)) {
            return EquivalenceWitness::NotEssentiallySurjective { object };
        }
    }
    EquivalenceWitness::Equivalence
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole candidate space was searched without success.
    Exhausted {
        candidates: u64,
    },
    BudgetExceeded {
        budget: u64,
    },
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Searches for a monoidal natural isomorphism `f => f2`, testing partial
/// assignments object by object.
pub fn find_monoidal_isos(
    f: &Arc<MonoidalFunctor>,
    f2: &Arc<MonoidalFunctor>,
    budget: u64,
) -> Result<SearchOutcome<MonoidalNatIso>> {
    if f.source != f2.source || f.target != f2.target {
        return Err(Error::ShapeMismatch("functors are not parallel".into()));
    }
    let (s, t) = (&*f.source, &*f.target);
    let n = s.objects();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0u64;

    let consistent = |comp: &[usize], x: usize| -> bool {
        let set = |y: usize| y <= x;
        for y in 0..=x {
            for &g in s.hom(x, y).iter().chain(s.hom(y, x)) {
                let (a, b) = (s.src(g), s.tgt(g));
                if t.compose(f2.mor[g], comp[a]) != t.compose(comp[b], f.mor[g]) {
                    return false;
                }
            }
        }
        for y in 0..=x {
            for (p, q) in [(x, y), (y, x)] {
                let pq = s.tensor_obj(p, q);
                if set(pq) {
                    let lhs = t.compose(comp[pq], f.phi(p, q));
                    let rhs = t.compose(f2.phi(p, q), t.tensor(comp[p], comp[q]));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        // Pairs completed by the new object as their product.
        for p in 0..x {
            for q in 0..x {
                if s.tensor_obj(p, q) == x {
                    let lhs = t.compose(comp[x], f.phi(p, q));
                    let rhs = t.compose(f2.phi(p, q), t.tensor(comp[p], comp[q]));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        if x == s.unit() && t.compose(comp[x], f.phi0) != f2.phi0 {
            return false;
        }
        true
    };

    fn rec(
        x: usize,
        n: usize,
        comp: &mut Vec<usize>,
        count: &mut u64,
        budget: u64,
        cands: &dyn Fn(usize) -> Vec<usize>,
        ok: &dyn Fn(&[usize], usize) -> bool,
    ) -> Option<bool> {
        if x == n {
            return Some(true);
        }
        for c in cands(x) {
            *count += 1;
            if *count > budget {
                return None;
            }
            comp[x] = c;
            if ok(comp, x) {
                match rec(x + 1, n, comp, count, budget, cands, ok) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
        }
        comp[x] = usize::MAX;
        Some(false)
    }

    let cands = |x: usize| t.hom(f.obj[x], f2.obj[x]).to_vec();
    match rec(0, n, &mut comp, &mut count, budget, &cands, &consistent) {
        None => Ok(SearchOutcome::BudgetExceeded { budget }),
        Some(false) => Ok(SearchOutcome::Exhausted { candidates: count }),
        Some(true) => {
            let d = MonoidalNatIso::new(f.clone(), f2.clone(), comp)?;
            Ok(SearchOutcome::Found(d))
        }
    }
}

/// All strictly unitary monoidal functors `source -> target` (optionally with
/// a prescribed object map), by exhaustive search with functoriality pruning.
pub fn enumerate_functors(
    source: &Arc<FinMonoidalGroupoid>,
    target: &Arc<FinMonoidalGroupoid>,
    object_map: Option<&[usize]>,
    budget: u64,
) -> Result<Vec<MonoidalFunctor>> {
    let (s, t) = (&**source, &**target);
    let n = s.objects();
    let obj_maps: Vec<Vec<usize>> = match object_map {
        Some(o) => vec![o.to_vec()],
        None => {
            let mut all = vec![vec![]];
            for x in 0..n {
                all = all
                    .into_iter()
                    .flat_map(|p: Vec<usize>| {
                        let choices: Vec<usize> = if x == s.unit() {
                            vec![t.unit()]
                        } else {
                            (0..t.objects()).collect()
                        };
                        choices.into_iter().map(move |y| {
                            let mut q = p.clone();
                            q.push(y);
                            q
                        })
                    })
                    .collect();
            }
            all
        }
    };
    let counter = AtomicU64::new(0);
    let results: Vec<Result<Vec<MonoidalFunctor>>> = obj_maps
        .par_iter()
        .map(|obj| enumerate_for_objects(source, target, obj, &counter, budget))
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn enumerate_for_objects(
    source: &Arc<FinMonoidalGroupoid>,
    target: &Arc<FinMonoidalGroupoid>,
    obj: &[usize],
    counter: &AtomicU64,
    budget: u64,
) -> Result<Vec<MonoidalFunctor>> {
    let (s, t) = (&**source, &**target);
    let n = s.objects();
    let m = s.morphisms();
    if obj[s.unit()] != t.unit() {
        return Ok(vec![]);
    }
    let mut mor_maps: Vec<Vec<usize>> = vec![vec![usize::MAX; m]];
    for g in 0..m {
        let cands: Vec<usize> = if s.id(s.src(g)) == g {
            vec![t.id(obj[s.src(g)])]
        } else {
            t.hom(obj[s.src(g)], obj[s.tgt(g)]).to_vec()
        };
        let mut next = Vec::new();
        for mm in &mor_maps {
            for &c in &cands {
                let mut mm2 = mm.clone();
                mm2[g] = c;
                let ok = (0..=g).all(|h| {
                    (0..=g).all(|k| match s.try_compose(h, k) {
                        Some(hk) if hk <= g => mm2[hk] == t.compose(mm2[h], mm2[k]),
                        _ => true,
                    })
                });
                if ok {
                    next.push(mm2);
                }
            }
        }
        mor_maps = next;
        if counter.fetch_add(mor_maps.len() as u64, Ordering::Relaxed) > budget {
            return Err(Error::SearchBudgetExceeded { budget });
        }
    }
    let u = s.unit();
    let mut out = Vec::new();
    for mor in mor_maps {
        // Unit squares fix phi at pairs involving the unit.
        let mut fixed = vec![None; n * n];
        for x in 0..n {
            fixed[u * n + x] = Some(t.compose(t.inv(mor[s.lunit(x)]), t.lunit(obj[x])));
            fixed[x * n + u] = Some(t.compose(t.inv(mor[s.runit(x)]), t.runit(obj[x])));
        }
        let mut phis: Vec<Vec<usize>> = vec![vec![]];
        for i in 0..n * n {
            let (x, y) = (i / n, i % n);
            let cands: Vec<usize> = match fixed[i] {
                Some(p) => vec![p],
                None => t
                    .hom(t.tensor_obj(obj[x], obj[y]), obj[s.tensor_obj(x, y)])
                    .to_vec(),
            };
            phis = phis
                .into_iter()
                .flat_map(|p| {
                    cands.iter().map(move |&c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
            if counter.fetch_add(phis.len() as u64, Ordering::Relaxed) > budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
        }
        for phi in phis {
            let f = MonoidalFunctor {
                source: source.clone(),
                target: target.clone(),
                obj: obj.to_vec(),
                mor: mor.clone(),
                phi,
                phi0: t.id(t.unit()),
            };
            let shapes_ok = (0..n * n).all(|i| {
                let (x, y) = (i / n, i % n);
                let p = f.phi[i];
                t.src(p) == t.tensor_obj(obj[x], obj[y]) && t.tgt(p) == obj[s.tensor_obj(x, y)]
            });
            if shapes_ok && validate_functor(&f).is_valid() {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// The functor `G` with `GX = target(theta[x])`, `G(f) = theta_Y F(f) theta_X^-1`,
/// `phi^G = theta_XY phi (theta_X (x) theta_Y)^-1` and `phi0^G = theta_I phi0`;
/// `theta` is then a monoidal isomorphism `F => G`.
pub fn transport_functor(
    f: &MonoidalFunctor,
    theta: &[usize],
) -> Result<(MonoidalFunctor, MonoidalNatIso)> {
    let (s, t) = (&*f.source, &*f.target);
    let n = s.objects();
    if theta.len() != n || (0..n).any(|x| t.src(theta[x]) != f.obj[x]) {
        return Err(Error::ShapeMismatch(
            "theta must start at the images of F".into(),
        ));
    }
    let g = MonoidalFunctor {
        source: f.source.clone(),
        target: f.target.clone(),
        obj: theta.iter().map(|&h| t.tgt(h)).collect(),
        mor: (0..s.morphisms())
            .map(|h| t.comp(&[theta[s.tgt(h)], f.mor[h], t.inv(theta[s.src(h)])]))
            .collect(),
        phi: (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                t.comp(&[
                    theta[s.tensor_obj(x, y)],
                    f.phi(x, y),
                    t.inv(t.tensor(theta[x], theta[y])),
                ])
            })
            .collect(),
        phi0: t.compose(theta[s.unit()], f.phi0),
    };
    let iso = MonoidalNatIso {
        source: Arc::new(f.clone()),
        target: Arc::new(g.clone()),
        comp: theta.to_vec(),
    };
    Ok((g, iso))
}
