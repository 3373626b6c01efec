//! Classification of monoidal abelian groupoids by third cohomology classes.
//!
//! A system with abelian coefficients is a 3-cocycle `λ` of its module; a
//! morphism `(p, q, φ)` exists exactly when `q_* λ - p^* λ' = dφ`, and the
//! choices of `φ` up to deformation form a torsor under `H^2(M, p^* A')`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::coefficients::{validate_mod_morphism, DMModule, GroupBundle};
use crate::cohomology::{
    categorical_reduction, cohomology, pullback_cochain, pushforward, reduce_cochain, BarComplex,
    Cochain, CochainSpace,
};
use crate::correspondence::{delta, j_equivalence, sigma, sigma_morphism, DeltaResult};
use crate::error::{Error, Result};
use crate::group::{abelian_structure, group_isomorphisms, AbElement, FinAbGroup, GroupHom};
use crate::groupoid::{
    aut_group, compose_functors, find_monoidal_isos, is_equivalence, pi0, FinMonoidalGroupoid,
    MonoidalFunctor, SearchOutcome,
};
use crate::monoid::{monoid_isomorphisms, units_of, FiniteMonoid, MonoidHom};
use crate::report::ValidationReport;
use crate::schreier::{try_invert, SchreierMorphism, SchreierSystem};

/// The coefficient module of a system whose groups are all abelian.
pub fn module_of(s: &SchreierSystem) -> Result<Arc<DMModule>> {
    for g in s.bundle().groups() {
        if let Some((x, y)) = g.non_commuting_pair() {
            return Err(Error::NotAbelian(x, y));
        }
    }
    Ok(Arc::new(DMModule::new(s.bundle().clone())?))
}

/// `λ` read as a normalized 3-cochain.
pub fn lambda_cochain(s: &SchreierSystem, module: &Arc<DMModule>) -> Result<Cochain> {
    let space = CochainSpace::new(module, 3)?;
    let values = space
        .tuples()
        .iter()
        .map(|t| s.lambda(t[0], t[1], t[2]))
        .collect();
    Ok(Cochain { degree: 3, values })
}

/// The system with associator `z`, which must be a normalized 3-cocycle.
pub fn system_from_cocycle(module: &Arc<DMModule>, z: &Cochain) -> Result<SchreierSystem> {
    let space = CochainSpace::new(module, 3)?;
    space.check(z)?;
    let n = module.base().size();
    let lambda = (0..n * n * n)
        .map(|i| space.value_at(z, &[i / (n * n), (i / n) % n, i % n]))
        .collect();
    SchreierSystem::new(module.bundle().clone(), lambda)
}

#[derive(Clone, Debug)]
pub struct CohomologyClassTriple {
    pub base: Arc<FiniteMonoid>,
    pub module: Arc<DMModule>,
    pub h3: FinAbGroup,
    pub class: AbElement,
}

pub fn cl(s: &SchreierSystem) -> Result<CohomologyClassTriple> {
    let module = module_of(s)?;
    let h = cohomology(&module, 3)?;
    let class = h.class_of(&lambda_cochain(s, &module)?)?;
    Ok(CohomologyClassTriple {
        base: s.bundle().base().clone(),
        module,
        h3: h.group().clone(),
        class,
    })
}

/// The module map underlying a morphism; deformations do not change it when
/// the coefficients are abelian.
pub fn cl_morphism(m: &SchreierMorphism) -> (MonoidHom, Vec<GroupHom>) {
    (m.p.clone(), m.q.clone())
}

/// `q_* λ - p^* λ'` in `C^3(M, p^* A')`, together with the pulled-back module.
fn obstruction(
    s1: &SchreierSystem,
    s2: &SchreierSystem,
    p: &MonoidHom,
    q: &[GroupHom],
) -> Result<(Arc<DMModule>, Cochain)> {
    let m1 = module_of(s1)?;
    let m2 = module_of(s2)?;
    let (pulled, pl2) = pullback_cochain(p, &m2, &lambda_cochain(s2, &m2)?)?;
    let ql1 = pushforward(&m1, &pulled, q, &lambda_cochain(s1, &m1)?)?;
    let space = CochainSpace::new(&pulled, 3)?;
    Ok((pulled, space.add(&ql1, &space.neg(&pl2))))
}

fn morphism_from_phi(
    s1: &Arc<SchreierSystem>,
    s2: &Arc<SchreierSystem>,
    p: &MonoidHom,
    q: &[GroupHom],
    pulled: &Arc<DMModule>,
    phi: &Cochain,
) -> Result<SchreierMorphism> {
    let space = CochainSpace::new(pulled, 2)?;
    let n = s1.base().size();
    let table = (0..n * n)
        .map(|i| space.value_at(phi, &[i / n, i % n]))
        .collect();
    SchreierMorphism::new(s1.clone(), s2.clone(), p.clone(), q.to_vec(), table)
}

/// A morphism `s1 -> s2` over `(p, q)` if one exists, using the canonical
/// coboundary witness for `φ`.
pub fn realize(
    s1: &Arc<SchreierSystem>,
    s2: &Arc<SchreierSystem>,
    p: &MonoidHom,
    q: &[GroupHom],
) -> Result<Option<SchreierMorphism>> {
    let report = validate_mod_morphism(p, q, s1.bundle(), s2.bundle())?;
    if !report.is_valid() {
        return Err(Error::invalid("module morphism", &report));
    }
    let (pulled, obs) = obstruction(s1, s2, p, q)?;
    let h = cohomology(&pulled, 3)?;
    match h.is_coboundary(&obs)? {
        Some(phi) => Ok(Some(morphism_from_phi(s1, s2, p, q, &pulled, &phi)?)),
        None => Ok(None),
    }
}

/// All families of isomorphisms `q_a: A_a -> A'_{p(a)}` compatible with the
/// structure maps. Counts every candidate family against `budget`.
pub fn module_isomorphisms(
    p: &MonoidHom,
    source: &GroupBundle,
    target: &GroupBundle,
    budget: u64,
    spent: &mut u64,
) -> Result<Vec<Vec<GroupHom>>> {
    let n = source.base().size();
    let choices: Vec<Vec<GroupHom>> = (0..n)
        .map(|a| group_isomorphisms(source.group(a), target.group(p.apply(a))))
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<GroupHom> = Vec::with_capacity(n);
    fn walk(
        choices: &[Vec<GroupHom>],
        current: &mut Vec<GroupHom>,
        visit: &mut dyn FnMut(&[GroupHom]) -> Result<()>,
    ) -> Result<()> {
        if current.len() == choices.len() {
            return visit(current);
        }
        for h in &choices[current.len()] {
            current.push(h.clone());
            walk(choices, current, visit)?;
            current.pop();
        }
        Ok(())
    }
    walk(&choices, &mut current, &mut |q| {
        *spent += 1;
        if *spent > budget {
            return Err(Error::SearchBudgetExceeded { budget });
        }
        if validate_mod_morphism(p, q, source, target)?.is_valid() {
            out.push(q.to_vec());
        }
        Ok(())
    })?;
    Ok(out)
}

/// Sizes of an exhausted search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchCounts {
    pub monoid_isos: usize,
    pub module_isos: usize,
}

#[derive(Clone, Debug)]
pub enum Decision<T> {
    Yes(T),
    /// Every candidate was examined and none works.
    No(SearchCounts),
}

impl<T> Decision<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn witness(&self) -> Option<&T> {
        match self {
            Decision::Yes(w) => Some(w),
            Decision::No(_) => None,
        }
    }
}

/// An equivalence `G ≃ G'` presented as a span of monoidal equivalences
/// `G <- Σ(ΔG) -> G'`, the right leg factoring through `Σ(m)`.
#[derive(Clone, Debug)]
pub struct EquivalenceCertificate {
    pub morphism: SchreierMorphism,
    pub to_source: MonoidalFunctor,
    pub to_target: MonoidalFunctor,
}

fn certificate(
    g1: &Arc<FinMonoidalGroupoid>,
    g2: &Arc<FinMonoidalGroupoid>,
    d1: &DeltaResult,
    d2: &DeltaResult,
    m: SchreierMorphism,
) -> Result<EquivalenceCertificate> {
    let to_source = j_equivalence(g1, d1)?;
    let to_target = compose_functors(&j_equivalence(g2, d2)?, &sigma_morphism(&m))?;
    if !is_equivalence(&to_source).is_equivalence() || !is_equivalence(&to_target).is_equivalence()
    {
        return Err(Error::Invalid {
            what: "equivalence certificate",
            report: "a leg of the span is not an equivalence".into(),
        });
    }
    Ok(EquivalenceCertificate {
        morphism: m,
        to_source,
        to_target,
    })
}

fn systems(
    g1: &FinMonoidalGroupoid,
    g2: &FinMonoidalGroupoid,
) -> Result<(
    DeltaResult,
    DeltaResult,
    Arc<SchreierSystem>,
    Arc<SchreierSystem>,
)> {
    let d1 = delta(g1)?;
    let d2 = delta(g2)?;
    let s1 = Arc::new(d1.system.clone());
    let s2 = Arc::new(d2.system.clone());
    module_of(&s1)?;
    module_of(&s2)?;
    Ok((d1, d2, s1, s2))
}

/// Decides `G ≃ G'` by searching module isomorphisms `(p, q)` and testing
/// the class condition for each.
pub fn are_equivalent(
    g1: &Arc<FinMonoidalGroupoid>,
    g2: &Arc<FinMonoidalGroupoid>,
    budget: u64,
) -> Result<Decision<EquivalenceCertificate>> {
    let (d1, d2, s1, s2) = systems(g1, g2)?;
    let mut counts = SearchCounts::default();
    let mut spent = 0;
    for map in monoid_isomorphisms(s1.base(), s2.base()) {
        counts.monoid_isos += 1;
        let p = MonoidHom::new(s1.bundle().base().clone(), s2.bundle().base().clone(), map)?;
        for q in module_isomorphisms(&p, s1.bundle(), s2.bundle(), budget, &mut spent)? {
            counts.module_isos += 1;
            if let Some(m) = realize(&s1, &s2, &p, &q)? {
                return Ok(Decision::Yes(certificate(g1, g2, &d1, &d2, m)?));
            }
        }
    }
    Ok(Decision::No(counts))
}

/// The same decision with the type fixed to a given module isomorphism.
pub fn are_equivalent_of_type(
    g1: &Arc<FinMonoidalGroupoid>,
    g2: &Arc<FinMonoidalGroupoid>,
    p: &MonoidHom,
    q: &[GroupHom],
) -> Result<Decision<EquivalenceCertificate>> {
    let (d1, d2, s1, s2) = systems(g1, g2)?;
    let bijective = p.is_bijective()
        && q.iter()
            .enumerate()
            .all(|(a, h)| h.is_bijective(s2.bundle().group(p.apply(a)).size()));
    if !bijective {
        return Err(Error::ShapeMismatch(
            "the type of an equivalence must be invertible".into(),
        ));
    }
    match realize(&s1, &s2, p, q)? {
        Some(m) => Ok(Decision::Yes(certificate(g1, g2, &d1, &d2, m)?)),
        None => Ok(Decision::No(SearchCounts {
            monoid_isos: 1,
            module_isos: 1,
        })),
    }
}

pub fn functor_exists(
    g1: &FinMonoidalGroupoid,
    g2: &FinMonoidalGroupoid,
    p: &MonoidHom,
    q: &[GroupHom],
) -> Result<bool> {
    let (_, _, s1, s2) = systems(g1, g2)?;
    Ok(realize(&s1, &s2, p, q)?.is_some())
}

#[derive(Clone, Debug)]
pub struct FunctorClasses {
    /// `|H^2(M, p^* A')|`.
    pub count: BigInt,
    pub h2: FinAbGroup,
    /// One morphism per class, indexed like the elements of `h2`, the first
    /// built from the canonical witness.
    pub representatives: Vec<SchreierMorphism>,
}

/// `None` when no functor of type `(p, q)` exists. Representatives are only
/// built when `with_representatives` is set.
pub fn count_functor_classes(
    g1: &FinMonoidalGroupoid,
    g2: &FinMonoidalGroupoid,
    p: &MonoidHom,
    q: &[GroupHom],
    with_representatives: bool,
) -> Result<Option<FunctorClasses>> {
    let (_, _, s1, s2) = systems(g1, g2)?;
    let Some(base) = realize(&s1, &s2, p, q)? else {
        return Ok(None);
    };
    let pulled = Arc::new(DMModule::pullback(p, &*module_of(&s2)?)?);
    let h2 = cohomology(&pulled, 2)?;
    let mut representatives = Vec::new();
    if with_representatives {
        let space = CochainSpace::new(&pulled, 2)?;
        let phi0 = Cochain {
            degree: 2,
            values: space
                .tuples()
                .iter()
                .map(|t| base.phi(t[0], t[1]))
                .collect(),
        };
        for x in h2.group().elements() {
            let phi = space.add(&phi0, &h2.representative_of(&x)?);
            representatives.push(morphism_from_phi(&s1, &s2, p, q, &pulled, &phi)?);
        }
    }
    Ok(Some(FunctorClasses {
        count: h2.group().order(),
        h2: h2.group().clone(),
        representatives,
    }))
}

/// Checks that no two representatives give isomorphic monoidal functors.
pub fn representatives_pairwise_distinct(reps: &[SchreierMorphism], budget: u64) -> Result<bool> {
    let functors: Vec<Arc<MonoidalFunctor>> =
        reps.iter().map(|m| Arc::new(sigma_morphism(m))).collect();
    for i in 0..functors.len() {
        for j in i + 1..functors.len() {
            match find_monoidal_isos(&functors[i], &functors[j], budget)? {
                SearchOutcome::Found(_) => return Ok(false),
                SearchOutcome::Exhausted { .. } => {}
                SearchOutcome::BudgetExceeded { budget } => {
                    return Err(Error::SearchBudgetExceeded { budget })
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct FiberClass {
    pub class: AbElement,
    pub system: SchreierSystem,
    pub groupoid: FinMonoidalGroupoid,
}

/// One system per element of `H^3(M, A)`, built from its representative cocycle.
pub fn classify_fiber(module: &Arc<DMModule>) -> Result<Vec<FiberClass>> {
    let h = cohomology(module, 3)?;
    if h.group().order_u64().is_none_or(|o| o > 1 << 12) {
        return Err(Error::TooLarge(format!(
            "H^3 has invariant factors {:?}",
            h.factors()
        )));
    }
    h.group()
        .elements()
        .map(|x| {
            let system = system_from_cocycle(module, &h.representative_of(&x)?)?;
            let groupoid = sigma(&system);
            Ok(FiberClass {
                class: x,
                system,
                groupoid,
            })
        })
        .collect()
}

/// `i` identifies `M` with the isomorphism classes of `G`; `j[x][f]` is the
/// automorphism of object `x` corresponding to `f ∈ A_a`, `x` in class `i(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeWitness {
    pub i: Vec<usize>,
    pub j: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeCondition {
    MonoidIso,
    GroupIso,
    Conjugation,
    LeftTensor,
    RightTensor,
}

pub fn validate_type_witness(
    g: &FinMonoidalGroupoid,
    bundle: &GroupBundle,
    w: &TypeWitness,
) -> Result<ValidationReport<TypeCondition>> {
    use TypeCondition::*;
    let p = pi0(g)?;
    let m = bundle.base();
    let mut report = ValidationReport::new();
    let ok = MonoidHom::new(m.clone(), Arc::new(p.monoid.clone()), w.i.clone())
        .is_ok_and(|h| h.is_bijective());
    report.check(ok, MonoidIso, [], || "i is not a monoid isomorphism".into());
    if !ok || w.j.len() != g.objects() {
        return Ok(report);
    }
    let mut inv = vec![0; m.size()];
    for (a, &c) in w.i.iter().enumerate() {
        inv[c] = a;
    }
    let class = |x: usize| inv[p.class_of[x]];
    for x in 0..g.objects() {
        let a = class(x);
        let aut = g.aut(x);
        let ok = w.j[x].len() == bundle.group(a).size()
            && w.j[x].iter().all(|f| aut.contains(f))
            && bundle.group(a).elements().all(|f| {
                bundle
                    .group(a)
                    .elements()
                    .all(|h| w.j[x][bundle.group(a).mul(f, h)] == g.compose(w.j[x][f], w.j[x][h]))
            })
            && {
                let mut seen = w.j[x].clone();
                seen.sort_unstable();
                seen.dedup();
                seen.len() == aut.len()
            };
        report.check(ok, GroupIso, [x], || {
            format!("j_{x} is not an isomorphism onto Aut({x})")
        });
        if !ok {
            return Ok(report);
        }
    }
    for x in 0..g.objects() {
        for y in 0..g.objects() {
            for &h in g.hom(x, y) {
                let ok = bundle
                    .group(class(x))
                    .elements()
                    .all(|f| w.j[y][f] == g.comp(&[h, w.j[x][f], g.inv(h)]));
                report.check(ok, Conjugation, [x, y, h], || {
                    format!("conjugating j_{x} by {h} does not give j_{y}")
                });
            }
        }
    }
    for x in 0..g.objects() {
        for y in 0..g.objects() {
            let (a, b) = (class(x), class(y));
            let xy = g.tensor_obj(x, y);
            let ok = bundle
                .group(b)
                .elements()
                .all(|f| w.j[xy][bundle.push(a, b, f)] == g.tensor(g.id(x), w.j[y][f]));
            report.check(ok, LeftTensor, [x, y], || {
                format!("j on {x}⊗{y} disagrees with 1⊗j_{y}")
            });
            let ok = bundle
                .group(a)
                .elements()
                .all(|f| w.j[xy][bundle.pull(a, b, f)] == g.tensor(w.j[x][f], g.id(y)));
            report.check(ok, RightTensor, [x, y], || {
                format!("j on {x}⊗{y} disagrees with j_{x}⊗1")
            });
        }
    }
    Ok(report)
}

/// Searches for a witness that `G` is of type `(M, A)`.
pub fn type_check(
    g: &FinMonoidalGroupoid,
    bundle: &GroupBundle,
    budget: u64,
) -> Result<Option<TypeWitness>> {
    let p = pi0(g)?;
    let m = bundle.base();
    let mut spent = 0u64;
    for i in monoid_isomorphisms(m, &p.monoid) {
        let reps: Vec<usize> = i.iter().map(|&c| p.least[c]).collect();
        let choices: Vec<Vec<GroupHom>> = (0..m.size())
            .map(|a| group_isomorphisms(bundle.group(a), &aut_group(g, reps[a])))
            .collect();
        let mut pick = vec![0usize; m.size()];
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        loop {
            spent += 1;
            if spent > budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            let mut inv = vec![0; m.size()];
            for (a, &c) in i.iter().enumerate() {
                inv[c] = a;
            }
            let j: Vec<Vec<usize>> = (0..g.objects())
                .map(|x| {
                    let a = inv[p.class_of[x]];
                    let r = reps[a];
                    let h = g.hom(r, x)[0];
                    let aut = g.aut(r);
                    choices[a][pick[a]]
                        .map
                        .iter()
                        .map(|&k| g.comp(&[h, aut[k], g.inv(h)]))
                        .collect()
                })
                .collect();
            let w = TypeWitness { i: i.clone(), j };
            if validate_type_witness(g, bundle, &w)?.is_valid() {
                return Ok(Some(w));
            }
            // Next combination, odometer style.
            let mut k = 0;
            while k < pick.len() {
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == pick.len() {
                break;
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsotropyCondition {
    /// `A_a` is abelian for an invertible `a`.
    AbelianAtUnit,
}

pub fn check_abelian_at_units(bundle: &GroupBundle) -> ValidationReport<IsotropyCondition> {
    let mut report = ValidationReport::new();
    for a in units_of(bundle.base()) {
        let pair = bundle.group(a).non_commuting_pair();
        report.check(
            pair.is_none(),
            IsotropyCondition::AbelianAtUnit,
            [a],
            || format!("A_{a} has non-commuting elements {pair:?}"),
        );
    }
    report
}

/// The same check on the automorphism groups of invertible objects.
pub fn check_abelian_at_invertible_objects(
    g: &FinMonoidalGroupoid,
) -> Result<ValidationReport<IsotropyCondition>> {
    let p = pi0(g)?;
    let mut report = ValidationReport::new();
    for x in 0..g.objects() {
        if p.monoid.inverse_of(p.class_of[x]).is_some() {
            let pair = aut_group(g, x).non_commuting_pair();
            report.check(
                pair.is_none(),
                IsotropyCondition::AbelianAtUnit,
                [x],
                || format!("Aut({x}) has non-commuting elements {pair:?}"),
            );
        }
    }
    Ok(report)
}

/// A system over a group rewritten as a group with an action on `A_1` and a
/// classical 3-cocycle, together with the comparison back.
#[derive(Clone, Debug)]
pub struct CatGroupReduction {
    pub complex: BarComplex,
    /// `λ̂` on every triple of group elements, in coordinates of `A_1`.
    pub lambda_hat: Vec<AbElement>,
    /// The system with `A_a = A_1`, `a_* = θ(a)`, `b^* = 1` and associator `λ̂`.
    pub embedded: SchreierSystem,
    /// `(1, (a^*), 1)` from the embedded system to the original one.
    pub comparison: SchreierMorphism,
}

pub fn reduce_catgroup(s: &Arc<SchreierSystem>) -> Result<CatGroupReduction> {
    let module = module_of(s)?;
    let complex = categorical_reduction(&module)?;
    let lam = lambda_cochain(s, &module)?;
    let lambda_hat = reduce_cochain(&module, &lam)?;
    if !complex.is_cocycle(3, &lambda_hat)? {
        return Err(Error::NotACocycle(
            "the reduced associator is not a classical cocycle".into(),
        ));
    }
    let m = s.bundle().base().clone();
    let bundle = s.bundle();
    let unit = m.unit();
    let a1 = bundle.group(unit).clone();
    let pull_inv: Vec<GroupHom> = m
        .elements()
        .map(|a| {
            bundle
                .rstar(unit, a)
                .inverse(bundle.group(a).size())
                .expect("checked by the reduction")
        })
        .collect();
    let theta: Vec<GroupHom> = m
        .elements()
        .map(|a| GroupHom {
            map: a1
                .elements()
                .map(|x| pull_inv[a].apply(bundle.push(a, unit, x)))
                .collect(),
        })
        .collect();
    let embedded_bundle = GroupBundle::from_fn(
        m.clone(),
        vec![a1.clone(); m.size()],
        |a, _, f| theta[a].apply(f),
        |_, _, g| g,
    )?;
    let s1 = abelian_structure(&a1).map_err(|(x, y)| Error::NotAbelian(x, y))?;
    let n = m.size();
    let lambda: Vec<usize> = lambda_hat.iter().map(|v| s1.element(v)).collect();
    let embedded = SchreierSystem::new(embedded_bundle, lambda)?;
    let q: Vec<GroupHom> = m
        .elements()
        .map(|a| bundle.rstar(unit, a).clone())
        .collect();
    let phi = (0..n * n)
        .map(|i| bundle.group(m.mul(i / n, i % n)).unit())
        .collect();
    let comparison = SchreierMorphism::new(
        Arc::new(embedded.clone()),
        s.clone(),
        MonoidHom::identity(m.clone()),
        q,
        phi,
    )?;
    try_invert(&comparison).map_err(|e| Error::Invalid {
        what: "categorical group comparison",
        report: format!("{e:?}"),
    })?;
    Ok(CatGroupReduction {
        complex,
        lambda_hat,
        embedded,
        comparison,
    })
}

/// Whether the reduced associator is a coboundary in the classical complex.
pub fn reduced_class_is_trivial(r: &CatGroupReduction) -> Result<bool> {
    r.complex.is_coboundary(3, &r.lambda_hat)
}

/// `θ` as table maps on `A_1`, for callers that want to inspect the action.
pub fn action_table(r: &CatGroupReduction) -> Vec<GroupHom> {
    let b = r.embedded.bundle();
    let unit = r.embedded.base().unit();
    r.embedded
        .base()
        .elements()
        .map(|a| b.lstar(a, unit).clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::coboundary;
    use crate::fixtures;
    use crate::groupoid::{enumerate_functors, fatten};
    use crate::schreier::validate_system;
    use proptest::prelude::*;

    const BUDGET: u64 = 1_000_000;

    fn arc_sigma(name: &str) -> Arc<FinMonoidalGroupoid> {
        Arc::new(sigma(&fixtures::system(name)))
    }

    fn identity_type(s: &SchreierSystem) -> (MonoidHom, Vec<GroupHom>) {
        let p = MonoidHom::identity(s.bundle().base().clone());
        let q = s.bundle().groups().iter().map(GroupHom::identity).collect();
        (p, q)
    }

    fn abelian_corpus() -> Vec<(&'static str, SchreierSystem)> {
        fixtures::corpus()
            .into_iter()
            .filter(|(_, s)| s.bundle().is_abelian())
            .collect()
    }

    #[test]
    fn classes_of_corpus_systems() {
        assert!(cl(&fixtures::system("z2-const-z2"))
            .unwrap()
            .class
            .iter()
            .all(|&x| x == 0));
        let twisted = cl(&fixtures::system("z2-const-z2-twisted")).unwrap();
        assert_eq!(twisted.h3.factors(), &[2]);
        assert_eq!(twisted.class, vec![1]);
        assert!(matches!(
            cl(&fixtures::system("nilpotent-s3")),
            Err(Error::NotAbelian(..))
        ));
    }

    #[test]
    fn class_is_invariant_under_coboundaries() {
        let mut moved = 0;
        for (name, s) in abelian_corpus() {
            let module = module_of(&s).unwrap();
            let base = cl(&s).unwrap().class;
            let c2 = CochainSpace::new(&module, 2).unwrap();
            for x in c2.group().elements().take(16) {
                let b = coboundary(&module, &c2.cochain(&x)).unwrap();
                let space = CochainSpace::new(&module, 3).unwrap();
                let lam = space.add(&lambda_cochain(&s, &module).unwrap(), &b);
                let t = system_from_cocycle(&module, &lam).unwrap();
                assert_eq!(cl(&t).unwrap().class, base, "{name}");
                if t != s {
                    moved += 1;
                    let (p, q) = identity_type(&s);
                    let d =
                        are_equivalent_of_type(&Arc::new(sigma(&s)), &Arc::new(sigma(&t)), &p, &q)
                            .unwrap();
                    assert!(d.is_yes(), "{name}");
                }
            }
        }
        assert!(moved > 0);
    }

    #[test]
    fn schreier_cocycles_are_leech_cocycles() {
        for (name, s) in abelian_corpus() {
            let module = module_of(&s).unwrap();
            let h = cohomology(&module, 3).unwrap();
            let space = CochainSpace::new(&module, 3).unwrap();
            for x in space.group().elements().take(64) {
                let z = space.cochain(&x);
                let lambda = {
                    let n = module.base().size();
                    (0..n * n * n)
                        .map(|i| space.value_at(&z, &[i / (n * n), (i / n) % n, i % n]))
                        .collect()
                };
                let t = SchreierSystem::from_parts(s.bundle().clone(), lambda).unwrap();
                assert_eq!(
                    validate_system(&t).is_valid(),
                    h.is_cocycle(&z).unwrap(),
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn equivalence_decisions() {
        let plain = arc_sigma("z2-const-z2");
        let twisted = arc_sigma("z2-const-z2-twisted");
        let yes = are_equivalent(&plain, &plain, BUDGET).unwrap();
        let w = yes.witness().unwrap();
        assert!(w.morphism.p.is_identity());
        match are_equivalent(&plain, &twisted, BUDGET).unwrap() {
            Decision::No(c) => assert_eq!(
                c,
                SearchCounts {
                    monoid_isos: 1,
                    module_isos: 1
                }
            ),
            Decision::Yes(_) => panic!("classes differ"),
        }
        let fat = Arc::new(fatten(&twisted, 1, 2).unwrap());
        assert!(are_equivalent(&twisted, &fat, BUDGET).unwrap().is_yes());
        assert!(are_equivalent(&fat, &twisted, BUDGET).unwrap().is_yes());
        // Z/3 twisted by the negation automorphism is equivalent to itself twisted the other way.
        let z3 = fixtures::system("z3-const-z3-twisted");
        let module = module_of(&z3).unwrap();
        let h = cohomology(&module, 3).unwrap();
        let other = system_from_cocycle(&module, &h.representative_of(&[2]).unwrap()).unwrap();
        let d = are_equivalent(&Arc::new(sigma(&z3)), &Arc::new(sigma(&other)), BUDGET).unwrap();
        assert!(d.is_yes());
        assert!(
            are_equivalent(&plain, &arc_sigma("z3-const-z3-twisted"), BUDGET)
                .unwrap()
                .witness()
                .is_none()
        );
        assert!(matches!(
            are_equivalent(
                &arc_sigma("klein-const-z2-twisted"),
                &arc_sigma("klein-const-z2-twisted"),
                0
            ),
            Err(Error::SearchBudgetExceeded { .. })
        ));
    }

    #[test]
    fn functor_classes_over_constant_z2() {
        let g = arc_sigma("z2-const-z2");
        let s = fixtures::system("z2-const-z2");
        let (p, q) = identity_type(&s);
        assert!(functor_exists(&g, &g, &p, &q).unwrap());
        let c = count_functor_classes(&g, &g, &p, &q, true)
            .unwrap()
            .unwrap();
        assert_eq!(c.count, BigInt::from(2));
        assert_eq!(c.representatives.len(), 2);
        assert!(representatives_pairwise_distinct(&c.representatives, BUDGET).unwrap());

        let twisted = arc_sigma("z2-const-z2-twisted");
        assert!(!functor_exists(&g, &twisted, &p, &q).unwrap());
        assert!(count_functor_classes(&g, &twisted, &p, &q, false)
            .unwrap()
            .is_none());

        // Into the trivial groupoid over Z/2 there is exactly one class.
        let trivial_bundle = GroupBundle::constant(
            s.bundle().base().clone(),
            crate::group::FiniteGroup::trivial(),
        );
        let t = SchreierSystem::with_trivial_lambda(trivial_bundle).unwrap();
        let tg = sigma(&t);
        let q0: Vec<GroupHom> = (0..2).map(|_| GroupHom { map: vec![0, 0] }).collect();
        let c = count_functor_classes(&g, &tg, &p, &q0, true)
            .unwrap()
            .unwrap();
        assert_eq!(c.count, BigInt::from(1));
    }

    #[test]
    fn functor_count_matches_enumeration() {
        let g = arc_sigma("z2-const-z2");
        let ident: Vec<usize> = (0..g.objects()).collect();
        let all = enumerate_functors(&g, &g, Some(&ident), BUDGET).unwrap();
        let d = delta(&g).unwrap();
        let of_type: Vec<Arc<MonoidalFunctor>> = all
            .into_iter()
            .filter(|f| {
                let m = crate::correspondence::delta_functor(f, &d, &d).unwrap();
                m.p.is_identity() && m.q.iter().all(|h| h.is_identity())
            })
            .map(Arc::new)
            .collect();
        let mut classes: Vec<Arc<MonoidalFunctor>> = Vec::new();
        for f in of_type {
            let mut found = false;
            for c in &classes {
                if find_monoidal_isos(c, &f, BUDGET).unwrap().found().is_some() {
                    found = true;
                    break;
                }
            }
            if !found {
                classes.push(f);
            }
        }
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn fibers() {
        let z2 = module_of(&fixtures::system("z2-const-z2")).unwrap();
        let fiber = classify_fiber(&z2).unwrap();
        assert_eq!(fiber.len(), 2);
        let (p, q) = identity_type(&fiber[0].system);
        let a = Arc::new(fiber[0].groupoid.clone());
        let b = Arc::new(fiber[1].groupoid.clone());
        assert!(!are_equivalent_of_type(&a, &b, &p, &q).unwrap().is_yes());
        assert!(are_equivalent_of_type(&a, &a, &p, &q).unwrap().is_yes());
        // Any cocycle lands in exactly one listed class.
        let twisted = cl(&fixtures::system("z2-const-z2-twisted")).unwrap();
        assert_eq!(fiber.iter().filter(|c| c.class == twisted.class).count(), 1);

        let e = module_of(&fixtures::system("idempotent-identity")).unwrap();
        assert_eq!(classify_fiber(&e).unwrap().len(), 1);
        let trivial = module_of(&fixtures::system("trivial")).unwrap();
        assert_eq!(classify_fiber(&trivial).unwrap().len(), 1);
        let klein = module_of(&fixtures::system("klein-const-z2-twisted")).unwrap();
        assert_eq!(classify_fiber(&klein).unwrap().len(), 16);
    }

    #[test]
    fn type_witnesses() {
        for (name, s) in abelian_corpus() {
            let g = sigma(&s);
            let w = type_check(&g, s.bundle(), BUDGET)
                .unwrap()
                .unwrap_or_else(|| panic!("{name}"));
            assert!(validate_type_witness(&g, s.bundle(), &w)
                .unwrap()
                .is_valid());
            let fat = fatten(&g, g.objects() - 1, 1).unwrap();
            let w = type_check(&fat, s.bundle(), BUDGET)
                .unwrap()
                .unwrap_or_else(|| panic!("{name} fat"));
            assert!(validate_type_witness(&fat, s.bundle(), &w)
                .unwrap()
                .is_valid());
        }
        let g = sigma(&fixtures::system("z2-const-z2"));
        let e = fixtures::system("idempotent-identity");
        assert!(type_check(&g, e.bundle(), BUDGET).unwrap().is_none());
        // Same monoid but non-isomorphic coefficients.
        let z4 = fixtures::system("z2-const-z4-twisted");
        assert!(type_check(&g, z4.bundle(), BUDGET).unwrap().is_none());
    }

    #[test]
    fn units_have_abelian_isotropy() {
        for (name, s) in fixtures::corpus() {
            assert!(check_abelian_at_units(s.bundle()).is_valid(), "{name}");
        }
        for (name, g) in fixtures::groupoids().unwrap() {
            assert!(
                check_abelian_at_invertible_objects(&g).unwrap().is_valid(),
                "{name}"
            );
        }
        let bad = GroupBundle::constant(
            Arc::new(FiniteMonoid::cyclic(2)),
            crate::group::FiniteGroup::symmetric3(),
        );
        assert!(check_abelian_at_units(&bad).cites(&IsotropyCondition::AbelianAtUnit));
    }

    #[test]
    fn catgroup_reduction() {
        let plain = Arc::new(fixtures::system("z2-const-z2"));
        let r = reduce_catgroup(&plain).unwrap();
        assert!(action_table(&r).iter().all(|h| h.is_identity()));
        assert_eq!(r.embedded, *plain);
        assert!(reduced_class_is_trivial(&r).unwrap());

        let twisted = Arc::new(fixtures::system("z2-const-z2-twisted"));
        let r = reduce_catgroup(&twisted).unwrap();
        assert_eq!(r.embedded, *twisted);
        assert!(!reduced_class_is_trivial(&r).unwrap());

        let on_z3 = Arc::new(fixtures::system("z2-on-z3"));
        let r = reduce_catgroup(&on_z3).unwrap();
        let theta = action_table(&r);
        assert_eq!(theta[1].map, vec![0, 2, 1]);
        let g = r.complex.group();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(theta[g.mul(a, b)], theta[a].compose(&theta[b]));
            }
        }
        assert!(matches!(
            reduce_catgroup(&Arc::new(fixtures::system("idempotent-full"))),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn reduction_preserves_classes() {
        for (name, s) in abelian_corpus() {
            if !s.base().is_group() {
                continue;
            }
            let module = module_of(&s).unwrap();
            let h = cohomology(&module, 3).unwrap();
            for x in h.group().elements() {
                let t = Arc::new(
                    system_from_cocycle(&module, &h.representative_of(&x).unwrap()).unwrap(),
                );
                let r = reduce_catgroup(&t).unwrap();
                let zero = x.iter().all(|&v| v == 0);
                assert_eq!(reduced_class_is_trivial(&r).unwrap(), zero, "{name} {x:?}");
                assert_eq!(cl(&r.embedded).unwrap().h3, h.group().clone());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn realized_morphisms_validate(seed in 0usize..64) {
            let systems = abelian_corpus();
            let (_, s) = &systems[seed % systems.len()];
            let module = module_of(s).unwrap();
            let h = cohomology(&module, 3).unwrap();
            let elems: Vec<_> = h.group().elements().collect();
            let x = &elems[seed % elems.len()];
            let t = Arc::new(system_from_cocycle(&module, &h.representative_of(x).unwrap()).unwrap());
            let s = Arc::new(s.clone());
            let (p, q) = identity_type(&s);
            let same = cl(&s).unwrap().class == cl(&t).unwrap().class;
            let m = realize(&s, &t, &p, &q).unwrap();
            prop_assert_eq!(m.is_some(), same);
        }
    }
}
