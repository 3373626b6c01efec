use crate::coefficients::{BundleCondition, BundleMode, GroupBundle};
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchreierCondition {
    /// `lambda (ab)_*(f) lambda^-1 = a_* b_*(f)`.
    LeftAction,
    /// `lambda c^*(a_*(g)) lambda^-1 = a_*(c^*(g))`.
    MixedAction,
    /// `lambda c^*(b^*(h)) lambda^-1 = (bc)^*(h)`.
    RightAction,
    /// `a_*(lambda_bcd) lambda_{a,bc,d} d^*(lambda_abc) = lambda_{a,b,cd} lambda_{ab,c,d}`.
    Cocycle,
    Centralizing,
    UnitMaps,
    /// `lambda` is trivial whenever an argument is the unit.
    Normalized,
}

/// `(M, A, Theta, lambda)` with `lambda[(a * n + b) * n + c]` in `A_abc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierSystem {
    bundle: GroupBundle,
    lambda: Vec<usize>,
}

impl SchreierSystem {
    /// Shape-checked but not validated; see [`validate_system`].
    pub fn from_parts(bundle: GroupBundle, lambda: Vec<usize>) -> Result<Self> {
        let m = bundle.base().clone();
        let n = m.size();
        if lambda.len() != n * n * n {
            return Err(Error::ShapeMismatch(format!(
                "lambda needs {} entries, got {}",
                n * n * n,
                lambda.len()
            )));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = lambda[(a * n + b) * n + c];
                    let size = bundle.group(m.mul_all(&[a, b, c])).size();
                    if v >= size {
                        return Err(Error::ShapeMismatch(format!(
                            "lambda({a},{b},{c}) = {v} is not in a group of order {size}"
                        )));
                    }
                }
            }
        }
        Ok(Self { bundle, lambda })
    }

    pub fn new(bundle: GroupBundle, lambda: Vec<usize>) -> Result<Self> {
        let s = Self::from_parts(bundle, lambda)?;
        let report = validate_system(&s);
        if !report.is_valid() {
            return Err(Error::invalid("Schreier system", &report));
        }
        Ok(s)
    }

    pub fn from_fn(bundle: GroupBundle, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let n = bundle.base().size();
        let lambda = (0..n * n * n)
            .map(|i| f(i / (n * n), (i / n) % n, i % n))
            .collect();
        Self::new(bundle, lambda)
    }

    /// The system with trivial `lambda`.
    pub fn with_trivial_lambda(bundle: GroupBundle) -> Result<Self> {
        let m = bundle.base().clone();
        let n = m.size();
        let lambda = (0..n * n * n)
            .map(|i| {
                bundle
                    .group(m.mul_all(&[i / (n * n), (i / n) % n, i % n]))
                    .unit()
            })
            .collect();
        Self::new(bundle, lambda)
    }

    pub fn bundle(&self) -> &GroupBundle {
        &self.bundle
    }

    pub fn base(&self) -> &FiniteMonoid {
        self.bundle.base()
    }

    pub fn group(&self, a: usize) -> &crate::group::FiniteGroup {
        self.bundle.group(a)
    }

    #[inline]
    pub fn lambda(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.base().size();
        self.lambda[(a * n + b) * n + c]
    }

    pub fn lambda_table(&self) -> &[usize] {
        &self.lambda
    }

    /// A copy with one `lambda` entry replaced, not revalidated.
    pub fn with_lambda_entry(&self, a: usize, b: usize, c: usize, v: usize) -> Result<Self> {
        let n = self.base().size();
        let mut lambda = self.lambda.clone();
        lambda[(a * n + b) * n + c] = v;
        Self::from_parts(self.bundle.clone(), lambda)
    }
}

pub fn validate_system(s: &SchreierSystem) -> ValidationReport<SchreierCondition> {
    use SchreierCondition::*;
    let bundle = &s.bundle;
    let m = s.base();
    let u = m.unit();
    let mut report = bundle.validate(BundleMode::General).map(|c| match c {
        BundleCondition::Centralizing => Centralizing,
        _ => UnitMaps,
    });
    for a in m.elements() {
        for b in m.elements() {
            for c in m.elements() {
                let (ab, bc) = (m.mul(a, b), m.mul(b, c));
                let abc = m.mul(ab, c);
                let g = bundle.group(abc);
                let l = s.lambda(a, b, c);
                let conj = |x: usize| g.conj(l, x);
                let ok = bundle.group(c).elements().all(|f| {
                    conj(bundle.push(ab, c, f)) == bundle.push(a, bc, bundle.push(b, c, f))
                });
                report.check(ok, LeftAction, [a, b, c], || {
                    "conjugation by lambda fails on a_* b_*".into()
                });
                let ok = bundle.group(b).elements().all(|f| {
                    conj(bundle.pull(ab, c, bundle.push(a, b, f)))
                        == bundle.push(a, bc, bundle.pull(b, c, f))
                });
                report.check(ok, MixedAction, [a, b, c], || {
                    "conjugation by lambda fails on c^* a_*".into()
                });
                let ok = bundle.group(a).elements().all(|f| {
                    conj(bundle.pull(ab, c, bundle.pull(a, b, f))) == bundle.pull(a, bc, f)
                });
                report.check(ok, RightAction, [a, b, c], || {
                    "conjugation by lambda fails on c^* b^*".into()
                });
                if a == u || b == u || c == u {
                    report.check(l == g.unit(), Normalized, [a, b, c], || {
                        format!("lambda({a},{b},{c}) = {l} is not trivial")
                    });
                }
            }
        }
    }
    for a in m.elements() {
        for b in m.elements() {
            for c in m.elements() {
                for d in m.elements() {
                    let (ab, bc, cd) = (m.mul(a, b), m.mul(b, c), m.mul(c, d));
                    let abc = m.mul(ab, c);
                    let g = bundle.group(m.mul(abc, d));
                    let lhs = g.mul_all(&[
                        bundle.push(a, m.mul(bc, d), s.lambda(b, c, d)),
                        s.lambda(a, bc, d),
                        bundle.pull(abc, d, s.lambda(a, b, c)),
                    ]);
                    let rhs = g.mul(s.lambda(a, b, cd), s.lambda(ab, c, d));
                    report.check(lhs == rhs, Cocycle, [a, b, c, d], || {
                        format!("cocycle sides differ: {lhs} vs {rhs}")
                    });
                }
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CocycleCondition {
    /// `a_*(mu_bc) mu_{a,bc} = c^*(mu_ab) mu_{ab,c}`.
    Cocycle,
    Normalized,
}

/// Non-abelian 2-cocycle check; `mu[a * n + b]` lies in `A_ab`.
pub fn validate_2cocycle(
    bundle: &GroupBundle,
    mu: &[usize],
) -> Result<ValidationReport<CocycleCondition>> {
    let m = bundle.base();
    let n = m.size();
    if mu.len() != n * n {
        return Err(Error::ShapeMismatch(format!("mu needs {} entries", n * n)));
    }
    for a in 0..n {
        for b in 0..n {
            if mu[a * n + b] >= bundle.group(m.mul(a, b)).size() {
                return Err(Error::ShapeMismatch(format!("mu({a},{b}) out of range")));
            }
        }
    }
    let u = m.unit();
    let mut report = ValidationReport::new();
    for a in 0..n {
        report.check(
            mu[u * n + a] == bundle.group(a).unit(),
            CocycleCondition::Normalized,
            [u, a],
            || "mu(1, a) is not trivial".into(),
        );
        report.check(
            mu[a * n + u] == bundle.group(a).unit(),
            CocycleCondition::Normalized,
            [a, u],
            || "mu(a, 1) is not trivial".into(),
        );
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ab, bc) = (m.mul(a, b), m.mul(b, c));
                let g = bundle.group(m.mul(ab, c));
                let lhs = g.mul(bundle.push(a, bc, mu[b * n + c]), mu[a * n + bc]);
                let rhs = g.mul(bundle.pull(ab, c, mu[a * n + b]), mu[ab * n + c]);
                report.check(lhs == rhs, CocycleCondition::Cocycle, [a, b, c], || {
                    format!("{lhs} vs {rhs}")
                });
            }
        }
    }
    Ok(report)
}
