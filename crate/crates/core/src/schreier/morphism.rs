use std::fmt;
use std::sync::Arc;

use super::system::SchreierSystem;
use crate::coefficients::check_family_shape;
use crate::error::{Error, Result};
use crate::group::GroupHom;
use crate::monoid::MonoidHom;
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphismCondition {
    /// `phi_ab p(a)_*(q_b f) phi_ab^-1 = q_ab(a_* f)`.
    LeftConjugation,
    /// `phi_ab p(b)^*(q_a g) phi_ab^-1 = q_ab(b^* g)`.
    RightConjugation,
    /// `q(lambda_abc) phi_{ab,c} p(c)^*(phi_ab) = phi_{a,bc} p(a)_*(phi_bc) lambda'`.
    Cocycle,
    /// `phi_{1,1} = 1`.
    Normalized,
}

/// `(p, q, phi)` from `source` to `target`, with `q_a: A_a -> A'_{p(a)}` and
/// `phi[a * n + b]` in `A'_{p(ab)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierMorphism {
    pub source: Arc<SchreierSystem>,
    pub target: Arc<SchreierSystem>,
    pub p: MonoidHom,
    pub q: Vec<GroupHom>,
    pub phi: Vec<usize>,
}

impl SchreierMorphism {
    /// Shape-checked but not validated; see [`validate_morphism`].
    pub fn from_parts(
        source: Arc<SchreierSystem>,
        target: Arc<SchreierSystem>,
        p: MonoidHom,
        q: Vec<GroupHom>,
        phi: Vec<usize>,
    ) -> Result<Self> {
        check_family_shape(&p, &q, source.bundle(), target.bundle())?;
        let m = source.base();
        let n = m.size();
        if phi.len() != n * n {
            return Err(Error::ShapeMismatch(format!("phi needs {} entries", n * n)));
        }
        for a in 0..n {
            for b in 0..n {
                let size = target.group(p.apply(m.mul(a, b))).size();
                if phi[a * n + b] >= size {
                    return Err(Error::ShapeMismatch(format!("phi({a},{b}) out of range")));
                }
            }
        }
        Ok(Self {
            source,
            target,
            p,
            q,
            phi,
        })
    }

    pub fn new(
        source: Arc<SchreierSystem>,
        target: Arc<SchreierSystem>,
        p: MonoidHom,
        q: Vec<GroupHom>,
        phi: Vec<usize>,
    ) -> Result<Self> {
        let m = Self::from_parts(source, target, p, q, phi)?;
        let report = validate_morphism(&m);
        if !report.is_valid() {
            return Err(Error::invalid("Schreier morphism", &report));
        }
        Ok(m)
    }

    pub fn identity(s: Arc<SchreierSystem>) -> Self {
        let m = s.base();
        let n = m.size();
        let p = MonoidHom::identity(Arc::new(m.clone()));
        let q = (0..n).map(|a| GroupHom::identity(s.group(a))).collect();
        let phi = (0..n * n)
            .map(|i| s.group(m.mul(i / n, i % n)).unit())
            .collect();
        Self {
            source: s.clone(),
            target: s,
            p,
            q,
            phi,
        }
    }

    #[inline]
    pub fn phi(&self, a: usize, b: usize) -> usize {
        self.phi[a * self.source.base().size() + b]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.source.clone())
    }
}

pub fn validate_morphism(m: &SchreierMorphism) -> ValidationReport<MorphismCondition> {
    use MorphismCondition::*;
    let (s, t) = (&*m.source, &*m.target);
    let (sb, tb) = (s.bundle(), t.bundle());
    let base = s.base();
    let u = base.unit();
    let mut report = ValidationReport::new();
    let pu = m.p.apply(u);
    report.check(
        m.phi(u, u) == t.group(pu).unit(),
        Normalized,
        [u, u],
        || format!("phi(1,1) = {} is not trivial", m.phi(u, u)),
    );
    for a in base.elements() {
        for b in base.elements() {
            let ab = base.mul(a, b);
            let (pa, pb) = (m.p.apply(a), m.p.apply(b));
            let g = t.group(m.p.apply(ab));
            let phi = m.phi(a, b);
            let ok = s.group(b).elements().all(|f| {
                g.conj(phi, tb.push(pa, pb, m.q[b].apply(f))) == m.q[ab].apply(sb.push(a, b, f))
            });
            report.check(ok, LeftConjugation, [a, b], || {
                "left conjugation fails".into()
            });
            let ok = s.group(a).elements().all(|f| {
                g.conj(phi, tb.pull(pa, pb, m.q[a].apply(f))) == m.q[ab].apply(sb.pull(a, b, f))
            });
            report.check(ok, RightConjugation, [a, b], || {
                "right conjugation fails".into()
            });
        }
    }
    for a in base.elements() {
        for b in base.elements() {
            for c in base.elements() {
                let (ab, bc) = (base.mul(a, b), base.mul(b, c));
                let abc = base.mul(ab, c);
                let (pa, pb, pc) = (m.p.apply(a), m.p.apply(b), m.p.apply(c));
                let g = t.group(m.p.apply(abc));
                let lhs = g.mul_all(&[
                    m.q[abc].apply(s.lambda(a, b, c)),
                    m.phi(ab, c),
                    tb.pull(m.p.apply(ab), pc, m.phi(a, b)),
                ]);
                let rhs = g.mul_all(&[
                    m.phi(a, bc),
                    tb.push(pa, m.p.apply(bc), m.phi(b, c)),
                    t.lambda(pa, pb, pc),
                ]);
                report.check(lhs == rhs, Cocycle, [a, b, c], || format!("{lhs} vs {rhs}"));
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeformationCondition {
    /// `delta_a^-1 qbar_a(f) delta_a = q_a(f)`.
    Conjugation,
    /// `delta_ab phi_ab = phibar_ab p(a)_*(delta_b) p(b)^*(delta_a)`.
    Cocycle,
    /// `delta_1 = 1`.
    Unit,
}

/// `delta: source => target`, with `delta[a]` in `A'_{p(a)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    pub source: Arc<SchreierMorphism>,
    pub target: Arc<SchreierMorphism>,
    pub delta: Vec<usize>,
}

impl Deformation {
    pub fn from_parts(
        source: Arc<SchreierMorphism>,
        target: Arc<SchreierMorphism>,
        delta: Vec<usize>,
    ) -> Result<Self> {
        if source.p != target.p {
            return Err(Error::PNotEqual);
        }
        if source.source != target.source || source.target != target.target {
            return Err(Error::ShapeMismatch("morphisms are not parallel".into()));
        }
        let n = source.source.base().size();
        if delta.len() != n {
            return Err(Error::ShapeMismatch(format!("delta needs {n} entries")));
        }
        for (a, &d) in delta.iter().enumerate() {
            if d >= source.target.group(source.p.apply(a)).size() {
                return Err(Error::ShapeMismatch(format!("delta({a}) out of range")));
            }
        }
        Ok(Self {
            source,
            target,
            delta,
        })
    }

    pub fn new(
        source: Arc<SchreierMorphism>,
        target: Arc<SchreierMorphism>,
        delta: Vec<usize>,
    ) -> Result<Self> {
        let d = Self::from_parts(source, target, delta)?;
        let report = validate_deformation(&d)?;
        if !report.is_valid() {
            return Err(Error::invalid("deformation", &report));
        }
        Ok(d)
    }

    pub fn identity(m: Arc<SchreierMorphism>) -> Self {
        let n = m.source.base().size();
        let delta = (0..n)
            .map(|a| m.target.group(m.p.apply(a)).unit())
            .collect();
        Self {
            source: m.clone(),
            target: m,
            delta,
        }
    }

    /// Pointwise inverse, a deformation `target => source`.
    pub fn inverse(&self) -> Self {
        let t = &self.source.target;
        let delta = self
            .delta
            .iter()
            .enumerate()
            .map(|(a, &d)| t.group(self.source.p.apply(a)).inv(d))
            .collect();
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            delta,
        }
    }
}

pub fn validate_deformation(d: &Deformation) -> Result<ValidationReport<DeformationCondition>> {
    use DeformationCondition::*;
    let (m, mbar) = (&*d.source, &*d.target);
    if m.p != mbar.p {
        return Err(Error::PNotEqual);
    }
    let (s, t) = (&*m.source, &*m.target);
    let tb = t.bundle();
    let base = s.base();
    let mut report = ValidationReport::new();
    let u = base.unit();
    report.check(
        d.delta[u] == t.group(m.p.apply(u)).unit(),
        Unit,
        [u],
        || "delta(1) is not trivial".into(),
    );
    for a in base.elements() {
        let g = t.group(m.p.apply(a));
        let di = g.inv(d.delta[a]);
        let ok = s
            .group(a)
            .elements()
            .all(|f| g.conj(di, mbar.q[a].apply(f)) == m.q[a].apply(f));
        report.check(ok, Conjugation, [a], || "conjugation fails".into());
    }
    for a in base.elements() {
        for b in base.elements() {
            let ab = base.mul(a, b);
            let (pa, pb) = (m.p.apply(a), m.p.apply(b));
            let g = t.group(m.p.apply(ab));
            let lhs = g.mul(d.delta[ab], m.phi(a, b));
            let rhs = g.mul_all(&[
                mbar.phi(a, b),
                tb.push(pa, pb, d.delta[b]),
                tb.pull(pa, pb, d.delta[a]),
            ]);
            report.check(lhs == rhs, Cocycle, [a, b], || format!("{lhs} vs {rhs}"));
        }
    }
    Ok(report)
}

/// `(upper . lower)_a = upper_a lower_a`.
pub fn compose_vertical(upper: &Deformation, lower: &Deformation) -> Result<Deformation> {
    if upper.source != lower.target {
        return Err(Error::NotComposable("deformations do not meet".into()));
    }
    let t = &lower.source.target;
    let delta = (0..lower.delta.len())
        .map(|a| {
            t.group(lower.source.p.apply(a))
                .mul(upper.delta[a], lower.delta[a])
        })
        .collect();
    Ok(Deformation {
        source: lower.source.clone(),
        target: upper.target.clone(),
        delta,
    })
}

/// `m2 m1 = (p' p, q'_{p(a)} q_a, q'_{p(ab)}(phi_ab) phi'_{p(a),p(b)})`.
pub fn compose_horizontal(
    m2: &SchreierMorphism,
    m1: &SchreierMorphism,
) -> Result<SchreierMorphism> {
    if m1.target != m2.source {
        return Err(Error::NotComposable("morphisms do not meet".into()));
    }
    let base = m1.source.base();
    let n = base.size();
    let p = m2.p.compose(&m1.p)?;
    let q = (0..n)
        .map(|a| m2.q[m1.p.apply(a)].compose(&m1.q[a]))
        .collect();
    let t = &m2.target;
    let phi = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            let pab = m1.p.apply(base.mul(a, b));
            t.group(p.apply(base.mul(a, b))).mul(
                m2.q[pab].apply(m1.phi(a, b)),
                m2.phi(m1.p.apply(a), m1.p.apply(b)),
            )
        })
        .collect();
    Ok(SchreierMorphism {
        source: m1.source.clone(),
        target: m2.target.clone(),
        p,
        q,
        phi,
    })
}

/// For `d1: m => mbar` and `d2: m' => mbar'`, the deformation
/// `m' m => mbar' mbar` with components `d2_{p(a)} q'_{p(a)}(d1_a)`.
pub fn compose_horizontal_deformations(d2: &Deformation, d1: &Deformation) -> Result<Deformation> {
    let source = compose_horizontal(&d2.source, &d1.source)?;
    let target = compose_horizontal(&d2.target, &d1.target)?;
    let p = &d1.source.p;
    let qp = &d2.source.q;
    let t = &d2.source.target;
    let delta = (0..d1.delta.len())
        .map(|a| {
            let pa = p.apply(a);
            t.group(d2.source.p.apply(pa))
                .mul(d2.delta[pa], qp[pa].apply(d1.delta[a]))
        })
        .collect();
    Ok(Deformation {
        source: Arc::new(source),
        target: Arc::new(target),
        delta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotInvertible {
    MonoidMap,
    Component(usize),
}

impl fmt::Display for NotInvertible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotInvertible::MonoidMap => write!(f, "p is not bijective"),
            NotInvertible::Component(a) => write!(f, "q_{a} is not bijective"),
        }
    }
}

/// The inverse morphism when `p` and every `q_a` are bijective.
pub fn try_invert(m: &SchreierMorphism) -> std::result::Result<SchreierMorphism, NotInvertible> {
    let pinv = m.p.inverse().ok_or(NotInvertible::MonoidMap)?;
    let (s, t) = (&m.source, &m.target);
    let n = t.base().size();
    let mut q = Vec::with_capacity(n);
    for a2 in 0..n {
        let a = pinv.apply(a2);
        q.push(
            m.q[a]
                .inverse(t.group(a2).size())
                .ok_or(NotInvertible::Component(a))?,
        );
    }
    let tm = t.base();
    let phi = (0..n * n)
        .map(|i| {
            let (a2, b2) = (i / n, i % n);
            let (a, b) = (pinv.apply(a2), pinv.apply(b2));
            let ab = s.base().mul(a, b);
            let inv = t.group(m.p.apply(ab)).inv(m.phi(a, b));
            q[tm.mul(a2, b2)].apply(inv)
        })
        .collect();
    Ok(SchreierMorphism {
        source: t.clone(),
        target: s.clone(),
        p: pinv,
        q,
        phi,
    })
}

/// The morphism `(1, f -> delta_a^-1 f delta_a, delta_ab^-1 a_*(delta_b) b^*(delta_a))`
/// from `s` to itself; `delta` is then a deformation from it to the identity.
pub fn inner_morphism(s: Arc<SchreierSystem>, delta: &[usize]) -> Result<SchreierMorphism> {
    let base = s.base().clone();
    let n = base.size();
    let b = s.bundle();
    let q = (0..n)
        .map(|a| {
            let g = s.group(a);
            GroupHom {
                map: g.elements().map(|f| g.conj(g.inv(delta[a]), f)).collect(),
            }
        })
        .collect();
    let phi = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            let xy = base.mul(x, y);
            let g = s.group(xy);
            g.mul_all(&[
                g.inv(delta[xy]),
                b.push(x, y, delta[y]),
                b.pull(x, y, delta[x]),
            ])
        })
        .collect();
    SchreierMorphism::new(s.clone(), s, MonoidHom::identity(Arc::new(base)), q, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::GroupBundle;
    use crate::group::FiniteGroup;
    use crate::monoid::FiniteMonoid;

    fn sys(top: usize) -> Arc<SchreierSystem> {
        let b = GroupBundle::constant(Arc::new(FiniteMonoid::cyclic(2)), FiniteGroup::cyclic(2));
        Arc::new(SchreierSystem::from_fn(b, |a, b, c| top & a & b & c).unwrap())
    }

    fn phi_morphism(
        s: &Arc<SchreierSystem>,
        t: &Arc<SchreierSystem>,
        phi: Vec<usize>,
    ) -> Result<SchreierMorphism> {
        let id = SchreierMorphism::identity(s.clone());
        SchreierMorphism::new(s.clone(), t.clone(), id.p, id.q, phi)
    }

    #[test]
    fn identity_is_valid() {
        let s = sys(1);
        assert!(validate_morphism(&SchreierMorphism::identity(s)).is_valid());
    }

    #[test]
    fn phi_morphisms_between_equal_cocycles() {
        let s = sys(0);
        // Over constant Z/2 every normalized phi has zero coboundary.
        assert!(phi_morphism(&s, &s, vec![0, 0, 0, 1]).is_ok());
        let m = SchreierMorphism::from_parts(
            s.clone(),
            s.clone(),
            MonoidHom::identity(Arc::new(s.base().clone())),
            vec![GroupHom::identity(s.group(0)); 2],
            vec![1, 0, 0, 0],
        )
        .unwrap();
        assert!(validate_morphism(&m).cites(&MorphismCondition::Normalized));
    }

    #[test]
    fn composition_and_inverse() {
        let s = sys(1);
        let m = Arc::new(phi_morphism(&s, &s, vec![0, 0, 0, 1]).unwrap());
        let id = SchreierMorphism::identity(s.clone());
        assert_eq!(compose_horizontal(&m, &id).unwrap(), *m);
        assert_eq!(compose_horizontal(&id, &m).unwrap(), *m);
        let mm = compose_horizontal(&m, &m).unwrap();
        assert_eq!(mm.phi, vec![0, 0, 0, 0]);
        let inv = try_invert(&m).unwrap();
        assert_eq!(inv.phi, vec![0, 0, 0, 1]);
        assert!(compose_horizontal(&inv, &m).unwrap().is_identity());
        assert!(compose_horizontal(&m, &inv).unwrap().is_identity());
    }

    #[test]
    fn non_injective_component_is_not_invertible() {
        let s = sys(0);
        let m = SchreierMorphism::new(
            s.clone(),
            s.clone(),
            MonoidHom::identity(Arc::new(s.base().clone())),
            vec![GroupHom { map: vec![0, 0] }; 2],
            vec![0; 4],
        )
        .unwrap();
        assert_eq!(try_invert(&m), Err(NotInvertible::Component(0)));
    }

    #[test]
    fn deformations() {
        let s = sys(1);
        let id = Arc::new(SchreierMorphism::identity(s.clone()));
        let one = Deformation::new(id.clone(), id.clone(), vec![0, 0]).unwrap();
        assert_eq!(compose_vertical(&one, &one).unwrap(), one);
        // delta_g = 1 shifts phi by the coboundary of delta, which is (0,0,0,0) here.
        let d = Deformation::new(id.clone(), id.clone(), vec![0, 1]).unwrap();
        assert_eq!(compose_vertical(&d, &d).unwrap().delta, vec![0, 0]);
        assert_eq!(compose_vertical(&d.inverse(), &d).unwrap(), one);
        let bad = Deformation::from_parts(id.clone(), id, vec![1, 0]).unwrap();
        assert!(validate_deformation(&bad)
            .unwrap()
            .cites(&DeformationCondition::Unit));
    }

    #[test]
    fn inner_morphisms_carry_their_deformation() {
        let s = sys(1);
        let m = Arc::new(inner_morphism(s.clone(), &[0, 1]).unwrap());
        let id = Arc::new(SchreierMorphism::identity(s));
        assert!(Deformation::new(m, id, vec![0, 1]).is_ok());
    }
}
